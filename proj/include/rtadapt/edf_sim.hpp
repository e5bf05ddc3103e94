#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtadapt/task_model.hpp"
#include "rtadapt/verdict.hpp"

namespace rtadapt {

enum class Algorithm { PeriodAdjust, TaskCompress };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view text);

/// Declaration order is the processing order for events at the same instant.
enum class EventKind { Depart, Arrive, SetFixedPeriod, ClearFixedPeriod };

std::string_view to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view text);

struct Event {
    double time_ms = 0.0;
    EventKind kind = EventKind::Arrive;
    std::string task;
    std::optional<double> period_ms;  // SetFixedPeriod only

    bool operator==(const Event&) const = default;
};

struct Scenario {
    TaskSet taskset;
    std::vector<bool> active_at_start;  // parallel to taskset
    std::vector<Event> events;          // non-decreasing time
    double duration_ms = 0.0;
    double u_d = 1.0;
    Algorithm algorithm = Algorithm::PeriodAdjust;
    double sample_interval_ms = 1000.0;

    bool operator==(const Scenario&) const = default;
};

class InvalidScenario : public std::runtime_error {
public:
    explicit InvalidScenario(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Scenario-level checks on top of the TaskSet invariants: event ordering and
/// range, task references, arrive/depart consistency, fixed-period requests.
std::vector<Violation> validate_scenario(const Scenario& sc);

struct Sample {
    double time_ms = 0.0;
    std::string task;
    std::uint64_t completed_count = 0;
    double current_period_ms = 0.0;

    bool operator==(const Sample&) const = default;
};

struct Miss {
    double time_ms = 0.0;  // the missed deadline
    std::string task;
    double job_release_ms = 0.0;

    bool operator==(const Miss&) const = default;
};

struct Adjustment {
    double time_ms = 0.0;
    std::size_t event_index = 0;  // into Scenario::events
    Verdict verdict;
    PeriodTable periods;  // active tasks after the adjustment (unchanged if infeasible)

    bool operator==(const Adjustment&) const = default;
};

struct BusyInterval {
    double start_ms = 0.0;
    double end_ms = 0.0;
    std::string task;

    bool operator==(const BusyInterval&) const = default;
};

struct SimTrace {
    std::vector<Sample> samples;
    std::vector<Miss> misses;
    std::vector<Adjustment> adjustments;
    std::vector<BusyInterval> busy;  // only with SimOptions::record_busy

    bool operator==(const SimTrace&) const = default;
};

struct SimOptions {
    bool record_busy = false;
};

/// Two instants closer than this are the same instant.
inline constexpr double kTimeEpsilon = 1e-7;

/// Preemptive EDF over [0, duration]. Throws InvalidScenario if the scenario
/// fails validate_scenario.
SimTrace simulate(const Scenario& sc, SimOptions options = {});

/// Whole periods in [start, end) for an uncontended task.
std::uint64_t instance_count_oracle(double period_ms, double start_ms, double end_ms);

}  // namespace rtadapt
