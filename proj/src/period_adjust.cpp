#include "rtadapt/period_adjust.hpp"

#include <cmath>
#include <stdexcept>

namespace rtadapt {

std::string_view to_string(ClampKind kind) {
    switch (kind) {
        case ClampKind::ToC: return "ToC";
        case ClampKind::ToTmin: return "ToTmin";
        case ClampKind::ToTmaxMigrated: return "ToTmaxMigrated";
    }
    return "Unknown";
}

namespace {

// Working view of one task during the iteration; `cls` changes when a
// bounded task is pinned at its maximum period.
struct WorkingTask {
    const Task* task;
    TaskClass cls;
    double fixed_period;
    double period;
};

}  // namespace

PeriodAssignment period_adjust(const TaskSet& ts, double u_d) {
    if (!(u_d > 0.0) || u_d > 1.0) throw std::domain_error("u_d must lie in (0, 1]");

    std::vector<WorkingTask> work;
    work.reserve(ts.size());
    for (const auto& t : ts)
        work.push_back({&t, t.cls, t.fixed_period.value_or(0.0), nominal_period(t)});

    PeriodAssignment result;

    for (;;) {
        ++result.passes;

        double u_hard = 0.0;
        for (const auto& w : work)
            if (w.cls == TaskClass::Hard) u_hard += w.task->c / w.fixed_period;
        if (u_d - u_hard <= 0.0) {
            result.verdict = Verdict::infeasible(Infeasibility::HardOverload);
            return result;
        }

        double u_fixed = 0.0;
        double fixed_weight = 0.0;
        std::size_t n_adjustable = 0;
        for (const auto& w : work) {
            if (w.cls == TaskClass::SoftFixed) {
                u_fixed += w.task->c / w.fixed_period;
                fixed_weight += w.task->weight;
            } else if (is_adjustable(w.cls)) {
                ++n_adjustable;
            }
        }
        const double u_soft = u_d - u_hard - u_fixed;
        if (u_soft <= 0.0) {
            result.verdict = Verdict::infeasible(Infeasibility::FixedOverload);
            return result;
        }

        const double spread =
            n_adjustable > 0 ? fixed_weight / static_cast<double>(n_adjustable) : 0.0;

        bool migrated = false;
        for (auto& w : work) {
            if (!is_adjustable(w.cls)) continue;
            const Task& t = *w.task;

            const double share = (t.weight + spread) * u_soft;
            if (!(share > 0.0) || !std::isfinite(share)) {
                result.verdict = Verdict::infeasible(Infeasibility::NoAdjustableCapacity);
                return result;
            }
            w.period = t.c / share;

            if (w.cls == TaskClass::SoftUnbounded) {
                if (w.period < t.c * (1.0 - kClampTolerance)) {
                    w.period = t.c;
                    result.clamp_log.push_back({result.passes, t.name, ClampKind::ToC});
                }
                continue;
            }

            if (w.period < *t.t_min * (1.0 - kClampTolerance)) {
                w.period = *t.t_min;
                result.clamp_log.push_back({result.passes, t.name, ClampKind::ToTmin});
            } else if (w.period > *t.t_max * (1.0 + kClampTolerance)) {
                w.period = *t.t_max;
                w.fixed_period = *t.t_max;
                w.cls = TaskClass::SoftFixed;
                migrated = true;
                result.clamp_log.push_back({result.passes, t.name, ClampKind::ToTmaxMigrated});
            }
        }

        if (!migrated) break;
    }

    for (const auto& w : work) {
        const double period = is_adjustable(w.cls) ? w.period : w.fixed_period;
        result.periods.set(w.task->name, period);
        result.achieved_utilization += w.task->c / period;
    }
    result.verdict = Verdict::feasible();
    return result;
}

}  // namespace rtadapt
