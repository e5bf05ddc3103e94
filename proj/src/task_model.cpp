#include "rtadapt/task_model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace rtadapt {

std::string_view to_string(TaskClass cls) {
    switch (cls) {
        case TaskClass::Hard: return "hard";
        case TaskClass::SoftFixed: return "soft-fixed";
        case TaskClass::SoftBounded: return "soft-bounded";
        case TaskClass::SoftUnbounded: return "soft-unbounded";
    }
    return "unknown";
}

std::optional<TaskClass> task_class_from_string(std::string_view text) {
    if (text == "hard") return TaskClass::Hard;
    if (text == "soft-fixed") return TaskClass::SoftFixed;
    if (text == "soft-bounded") return TaskClass::SoftBounded;
    if (text == "soft-unbounded") return TaskClass::SoftUnbounded;
    return std::nullopt;
}

std::string to_string(const Violation& v) {
    if (v.task.empty()) return v.message;
    return v.task + ": " + v.message;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
    std::ostringstream os;
    os << "invalid task set";
    for (const auto& v : violations) os << "; " << to_string(v);
    return os.str();
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void check_task(const Task& t, std::vector<Violation>& out) {
    auto fail = [&](std::string msg) { out.push_back({t.name, std::move(msg)}); };

    if (t.name.empty()) out.push_back({"", "task name is empty"});
    if (!positive_finite(t.c)) fail("c must be > 0");
    if (!positive_finite(t.t0)) fail("t0 must be > 0");
    else if (t.t0 < t.c) fail("t0 < c");

    for (auto [bound, label] : {std::pair{t.t_min, "t_min"}, std::pair{t.t_max, "t_max"}}) {
        if (bound && !positive_finite(*bound)) fail(std::string(label) + " must be > 0");
    }
    if (t.t_min && t.t_max && *t.t_min > *t.t_max) fail("t_min > t_max");

    if (t.elastic_coeff && !(std::isfinite(*t.elastic_coeff) && *t.elastic_coeff >= 0.0))
        fail("elastic_coeff must be >= 0");
    if (!std::isfinite(t.weight)) fail("weight must be finite");

    switch (t.cls) {
        case TaskClass::Hard:
            if (t.weight != 1.0) fail("hard task weight must be 1");
            break;
        case TaskClass::SoftFixed:
            if (t.weight < 0.0 || t.weight > 1.0) fail("weight must be in [0, 1]");
            break;
        case TaskClass::SoftBounded:
        case TaskClass::SoftUnbounded:
            if (!(t.weight > 0.0) || t.weight > 1.0) fail("weight must be in (0, 1]");
            break;
    }

    if (t.cls == TaskClass::Hard || t.cls == TaskClass::SoftFixed) {
        if (!t.fixed_period) {
            fail("fixed_period required for hard and soft-fixed tasks");
        } else if (!positive_finite(*t.fixed_period) || *t.fixed_period < t.c) {
            fail("fixed_period < c");
        } else if (t.cls == TaskClass::Hard && *t.fixed_period != t.t0) {
            fail("hard task fixed_period must equal t0");
        }
    }

    if (t.cls == TaskClass::SoftBounded) {
        if (!t.t_min || !t.t_max) {
            fail("soft-bounded task needs both t_min and t_max");
        } else {
            if (*t.t_min < t.c) fail("t_min < c");
            if (t.t0 < *t.t_min) fail("t0 < t_min");
            if (t.t0 > *t.t_max) fail("t0 > t_max");
        }
    }
    if (t.cls == TaskClass::SoftUnbounded && (t.t_min || t.t_max))
        fail("soft-unbounded task must not have period bounds");
}

}  // namespace

InvalidTaskSet::InvalidTaskSet(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate(std::span<const Task> tasks) {
    std::vector<Violation> out;
    std::set<std::string_view> seen;
    double soft_weight = 0.0;
    bool any_soft = false;

    for (const auto& t : tasks) {
        if (!t.name.empty() && !seen.insert(t.name).second)
            out.push_back({t.name, "duplicate task name"});
        check_task(t, out);
        if (is_soft(t.cls)) {
            any_soft = true;
            soft_weight += t.weight;
        }
    }
    if (any_soft && std::abs(soft_weight - 1.0) > kWeightSumTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "soft weights sum ≠ 1 (sum = " << soft_weight << ")";
        out.push_back({"", os.str()});
    }
    return out;
}

std::vector<Violation> validate_task(const Task& t) {
    std::vector<Violation> out;
    check_task(t, out);
    return out;
}

TaskSet::TaskSet(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
    if (auto violations = validate(tasks_); !violations.empty())
        throw InvalidTaskSet(std::move(violations));
}

TaskCounts TaskSet::counts() const {
    TaskCounts n;
    n.total = tasks_.size();
    for (const auto& t : tasks_) {
        if (t.cls == TaskClass::Hard) ++n.hard;
        else if (t.cls == TaskClass::SoftFixed) ++n.soft_fixed;
    }
    n.adjustable = n.total - n.hard - n.soft_fixed;
    return n;
}

const Task* TaskSet::find(std::string_view name) const {
    for (const auto& t : tasks_)
        if (t.name == name) return &t;
    return nullptr;
}

std::optional<std::size_t> TaskSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        if (tasks_[i].name == name) return i;
    return std::nullopt;
}

void PeriodTable::set(std::string name, double period_ms) {
    for (auto& [n, p] : entries_) {
        if (n == name) {
            p = period_ms;
            return;
        }
    }
    entries_.emplace_back(std::move(name), period_ms);
}

std::optional<double> PeriodTable::find(std::string_view name) const {
    for (const auto& [n, p] : entries_)
        if (n == name) return p;
    return std::nullopt;
}

double PeriodTable::at(std::string_view name) const {
    if (auto p = find(name)) return *p;
    throw std::out_of_range("no period for task '" + std::string(name) + "'");
}

double utilization(double c, double t) {
    if (!(c > 0.0) || !(t > 0.0)) throw std::domain_error("utilization needs c > 0 and t > 0");
    return c / t;
}

double rm_bound(unsigned n) {
    if (n == 0) throw std::domain_error("rm_bound needs n >= 1");
    const double k = static_cast<double>(n);
    return k * (std::pow(2.0, 1.0 / k) - 1.0);
}

double total_utilization(const TaskSet& ts, const PeriodTable& periods) {
    double sum = 0.0;
    for (const auto& t : ts) {
        const double period = periods.at(t.name);
        if (period < t.c) throw std::domain_error("period of '" + t.name + "' is below its c");
        sum += utilization(t.c, period);
    }
    return sum;
}

double nominal_period(const Task& task) {
    if ((task.cls == TaskClass::Hard || task.cls == TaskClass::SoftFixed) && task.fixed_period)
        return *task.fixed_period;
    return task.t0;
}

}  // namespace rtadapt
