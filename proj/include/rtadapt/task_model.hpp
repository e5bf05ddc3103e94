#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rtadapt {

/// Scheduling class of a periodic task.
///
/// Hard and SoftFixed tasks run at `fixed_period`. SoftBounded tasks have an
/// admissible period range [t_min, t_max]; SoftUnbounded tasks have none and
/// are limited only by T >= C.
enum class TaskClass { Hard, SoftFixed, SoftBounded, SoftUnbounded };

std::string_view to_string(TaskClass cls);
std::optional<TaskClass> task_class_from_string(std::string_view text);

inline bool is_soft(TaskClass cls) { return cls != TaskClass::Hard; }
inline bool is_adjustable(TaskClass cls) {
    return cls == TaskClass::SoftBounded || cls == TaskClass::SoftUnbounded;
}

/// One periodic task. All times are milliseconds.
///
/// An absent `t_min` / `t_max` means the period is unbounded on that side.
struct Task {
    std::string name;
    double c = 0.0;
    double t0 = 0.0;
    std::optional<double> t_min;
    std::optional<double> t_max;
    double weight = 1.0;
    TaskClass cls = TaskClass::SoftUnbounded;
    std::optional<double> fixed_period;
    std::optional<double> elastic_coeff;

    bool operator==(const Task&) const = default;
};

struct Violation {
    std::string task;  // empty for set-level violations
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& v);

/// Thrown when a TaskSet is constructed from tasks that fail validation.
class InvalidTaskSet : public std::runtime_error {
public:
    explicit InvalidTaskSet(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

inline constexpr double kWeightSumTolerance = 1e-9;

/// Returns every violated task or task-set invariant. Empty means valid.
std::vector<Violation> validate(std::span<const Task> tasks);

/// Per-task invariants only (no name uniqueness or weight sum).
std::vector<Violation> validate_task(const Task& t);

struct TaskCounts {
    std::size_t total = 0;
    std::size_t hard = 0;
    std::size_t soft_fixed = 0;
    std::size_t adjustable = 0;
};

/// Validated, ordered collection of tasks. Construction throws InvalidTaskSet,
/// so every TaskSet instance satisfies the model invariants.
class TaskSet {
public:
    explicit TaskSet(std::vector<Task> tasks);

    const std::vector<Task>& tasks() const noexcept { return tasks_; }
    std::size_t size() const noexcept { return tasks_.size(); }
    const Task& operator[](std::size_t i) const { return tasks_[i]; }
    auto begin() const noexcept { return tasks_.begin(); }
    auto end() const noexcept { return tasks_.end(); }

    TaskCounts counts() const;
    const Task* find(std::string_view name) const;
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const TaskSet&) const = default;

private:
    std::vector<Task> tasks_;
};

/// Ordered name -> period (ms) table. Iteration follows insertion order.
class PeriodTable {
public:
    using Entry = std::pair<std::string, double>;

    void set(std::string name, double period_ms);
    std::optional<double> find(std::string_view name) const;
    double at(std::string_view name) const;  // throws std::out_of_range

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    bool operator==(const PeriodTable&) const = default;

private:
    std::vector<Entry> entries_;
};

/// c / t. Throws std::domain_error unless both are positive.
double utilization(double c, double t);

/// Liu-Layland rate-monotonic bound n(2^(1/n) - 1). Throws std::domain_error for n = 0.
double rm_bound(unsigned n);

/// Sum of c_i / T_i with T_i taken from `periods`. Throws std::out_of_range
/// if a task is missing and std::domain_error if a period is below its c.
double total_utilization(const TaskSet& ts, const PeriodTable& periods);

/// Period a task runs at when nothing has been adjusted: fixed_period for
/// Hard/SoftFixed tasks, t0 otherwise.
double nominal_period(const Task& task);

}  // namespace rtadapt
