#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rtadapt/task_model.hpp"
#include "rtadapt/verdict.hpp"

namespace rtadapt {

enum class ClampKind { ToC, ToTmin, ToTmaxMigrated };

std::string_view to_string(ClampKind kind);

struct ClampRecord {
    std::size_t pass = 0;  // 1-based
    std::string task;
    ClampKind kind = ClampKind::ToC;

    bool operator==(const ClampRecord&) const = default;
};

struct PeriodAssignment {
    Verdict verdict;
    PeriodTable periods;  // empty unless feasible; task-set order
    std::size_t passes = 0;
    std::vector<ClampRecord> clamp_log;
    double achieved_utilization = 0.0;

    bool operator==(const PeriodAssignment&) const = default;
};

/// Relative slack used for every clamp comparison.
inline constexpr double kClampTolerance = 1e-9;

/// Weighted period assignment for soft tasks under a target utilization.
///
/// Hard tasks and SoftFixed tasks consume their utilization first; the
/// remaining budget is split among adjustable tasks in proportion to their
/// weight plus an equal share of the SoftFixed weight pool. SoftUnbounded
/// periods are clamped up to C, SoftBounded periods up to T_min. A
/// SoftBounded task whose period exceeds T_max is pinned at T_max, becomes
/// SoftFixed, and the assignment is recomputed; this repeats until a pass
/// pins nothing.
///
/// Throws std::domain_error unless 0 < u_d <= 1.
PeriodAssignment period_adjust(const TaskSet& ts, double u_d);

}  // namespace rtadapt
