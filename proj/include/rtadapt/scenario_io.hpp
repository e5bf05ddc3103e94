#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtadapt/edf_sim.hpp"
#include "rtadapt/elastic.hpp"
#include "rtadapt/period_adjust.hpp"

namespace rtadapt {

/// One problem found while loading a scenario document.
struct Diagnostic {
    enum class Kind { Syntax, Schema, Semantic };

    Kind kind = Kind::Schema;
    std::string where;  // "line L, column C", a JSON path, or a task name
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Thrown when an output sink cannot be written.
class SinkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses and fully validates a scenario document. Throws ScenarioError with
/// every problem found at the first failing stage (syntax, schema, semantics).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON form of a scenario; parse_scenario(write_scenario(s)) == s.
std::string write_scenario(const Scenario& sc);

/// Integers print without a decimal point; other values with at most six
/// decimals and trailing zeros removed.
std::string format_number(double value);

void write_samples_csv(const std::vector<Sample>& samples, std::ostream& os);
void write_misses_csv(const std::vector<Miss>& misses, std::ostream& os);
void write_adjustments_csv(const std::vector<Adjustment>& adjustments, std::ostream& os);

/// Writes samples.csv, misses.csv and adjustments.csv into `dir`, creating it
/// if needed.
void write_trace_csv(const SimTrace& trace, const std::filesystem::path& dir);

enum class AssignmentFormat { Csv, Json };

void write_assignment(const TaskSet& ts, const PeriodAssignment& pa, std::ostream& os,
                      AssignmentFormat format);
void write_assignment(const TaskSet& ts, const ElasticResult& er, std::ostream& os,
                      AssignmentFormat format);

/// Opens `path` for writing or throws SinkError.
std::ofstream open_sink(const std::filesystem::path& path);

}  // namespace rtadapt
