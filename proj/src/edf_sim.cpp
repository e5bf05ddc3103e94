#include "rtadapt/edf_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rtadapt/elastic.hpp"
#include "rtadapt/period_adjust.hpp"

namespace rtadapt {

std::string_view to_string(Algorithm a) {
    return a == Algorithm::PeriodAdjust ? "period-adjust" : "task-compress";
}

std::optional<Algorithm> algorithm_from_string(std::string_view text) {
    if (text == "period-adjust") return Algorithm::PeriodAdjust;
    if (text == "task-compress") return Algorithm::TaskCompress;
    return std::nullopt;
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Depart: return "depart";
        case EventKind::Arrive: return "arrive";
        case EventKind::SetFixedPeriod: return "set-fixed-period";
        case EventKind::ClearFixedPeriod: return "clear-fixed-period";
    }
    return "unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view text) {
    if (text == "depart") return EventKind::Depart;
    if (text == "arrive") return EventKind::Arrive;
    if (text == "set-fixed-period") return EventKind::SetFixedPeriod;
    if (text == "clear-fixed-period") return EventKind::ClearFixedPeriod;
    return std::nullopt;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
    std::ostringstream os;
    os << "invalid scenario";
    for (const auto& v : violations) os << "; " << to_string(v);
    return os.str();
}

std::string event_label(std::size_t i) { return "event[" + std::to_string(i) + "]"; }

// Event indices in processing order: time, then kind priority, then task order.
std::vector<std::size_t> event_order(const Scenario& sc) {
    std::vector<std::size_t> order(sc.events.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto task_pos = [&](const Event& e) {
        return sc.taskset.index_of(e.task).value_or(std::numeric_limits<std::size_t>::max());
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Event& ea = sc.events[a];
        const Event& eb = sc.events[b];
        if (ea.time_ms != eb.time_ms) return ea.time_ms < eb.time_ms;
        if (ea.kind != eb.kind) return ea.kind < eb.kind;
        return task_pos(ea) < task_pos(eb);
    });
    return order;
}

}  // namespace

InvalidScenario::InvalidScenario(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate_scenario(const Scenario& sc) {
    std::vector<Violation> out;
    const auto& ts = sc.taskset;

    if (!(sc.u_d > 0.0) || sc.u_d > 1.0) out.push_back({"", "u_d must lie in (0, 1]"});
    if (!(sc.duration_ms >= 0.0) || !std::isfinite(sc.duration_ms))
        out.push_back({"", "duration must be >= 0"});
    if (!(sc.sample_interval_ms > 0.0) || !std::isfinite(sc.sample_interval_ms))
        out.push_back({"", "sample interval must be > 0"});
    if (sc.active_at_start.size() != ts.size())
        out.push_back({"", "active_at_start does not match the task count"});

    for (std::size_t i = 1; i < sc.events.size(); ++i) {
        if (sc.events[i].time_ms < sc.events[i - 1].time_ms)
            out.push_back({"", event_label(i) + " is out of time order"});
    }

    std::vector<bool> active = sc.active_at_start;
    active.resize(ts.size(), false);
    std::vector<Task> classes(ts.begin(), ts.end());

    for (std::size_t i : event_order(sc)) {
        const Event& e = sc.events[i];
        const std::string where = event_label(i);
        if (!(e.time_ms >= 0.0) || e.time_ms > sc.duration_ms)
            out.push_back({e.task, where + " time outside [0, duration]"});

        auto idx = ts.index_of(e.task);
        if (!idx) {
            out.push_back({e.task, where + " references an unknown task"});
            continue;
        }
        Task& t = classes[*idx];
        if (e.kind != EventKind::SetFixedPeriod && e.period_ms)
            out.push_back({e.task, where + " period is only allowed on set-fixed-period"});

        switch (e.kind) {
            case EventKind::Arrive:
                if (active[*idx]) out.push_back({e.task, where + " arrives while already active"});
                active[*idx] = true;
                break;
            case EventKind::Depart:
                if (!active[*idx]) out.push_back({e.task, where + " departs while inactive"});
                active[*idx] = false;
                break;
            case EventKind::SetFixedPeriod:
                if (t.cls == TaskClass::Hard) {
                    out.push_back({e.task, where + " cannot change a hard task's period"});
                } else if (!e.period_ms) {
                    out.push_back({e.task, where + " set-fixed-period needs a period"});
                } else if (!(*e.period_ms >= t.c) || !std::isfinite(*e.period_ms)) {
                    out.push_back({e.task, where + " period < c"});
                } else {
                    t.cls = TaskClass::SoftFixed;
                    t.fixed_period = e.period_ms;
                }
                break;
            case EventKind::ClearFixedPeriod:
                if (t.cls == TaskClass::Hard) {
                    out.push_back({e.task, where + " cannot clear a hard task's period"});
                    break;
                }
                if (t.t_min.has_value() != t.t_max.has_value()) {
                    out.push_back({e.task, where + " clear needs both period bounds or neither"});
                    break;
                }
                t.cls = t.t_min ? TaskClass::SoftBounded : TaskClass::SoftUnbounded;
                t.fixed_period.reset();
                for (auto& v : validate_task(t))
                    out.push_back({e.task, where + " leaves an invalid task: " + v.message});
                break;
        }
    }
    return out;
}

namespace {

struct Job {
    double release = 0.0;
    double deadline = 0.0;
    double remaining = 0.0;
};

struct TaskState {
    Task spec;  // class/fixed period as the algorithm sees it
    bool active = false;
    double period = 0.0;
    double next_release = 0.0;
    std::optional<Job> job;
    std::uint64_t completed = 0;
};

class Simulator {
public:
    Simulator(const Scenario& sc, SimOptions options)
        : sc_(sc), options_(options), order_(event_order(sc)) {
        tasks_.reserve(sc.taskset.size());
        for (std::size_t i = 0; i < sc.taskset.size(); ++i) {
            TaskState s;
            s.spec = sc.taskset[i];
            s.active = sc.active_at_start[i];
            s.period = s.spec.t0;
            s.next_release = 0.0;
            tasks_.push_back(std::move(s));
        }
    }

    SimTrace run() {
        double now = 0.0;
        for (;;) {
            retire_jobs(now);
            apply_events(now);
            release_jobs(now);
            take_samples(now);
            if (now >= sc_.duration_ms - kTimeEpsilon) break;

            const auto running = pick_job();
            const double next = next_instant(now, running);
            if (running) {
                auto& job = *tasks_[*running].job;
                job.remaining -= next - now;
                record_busy(now, next, *running);
            }
            now = next;
        }
        return std::move(trace_);
    }

private:
    void retire_jobs(double now) {
        for (auto& s : tasks_) {
            if (!s.job) continue;
            if (s.job->remaining <= kTimeEpsilon) {
                ++s.completed;
                s.job.reset();
            } else if (s.job->deadline <= now + kTimeEpsilon) {
                trace_.misses.push_back({s.job->deadline, s.spec.name, s.job->release});
                s.job.reset();
            }
        }
    }

    void apply_events(double now) {
        while (next_event_ < order_.size()) {
            const std::size_t ei = order_[next_event_];
            const Event& e = sc_.events[ei];
            if (e.time_ms > now + kTimeEpsilon) break;
            ++next_event_;

            TaskState& s = tasks_[*sc_.taskset.index_of(e.task)];
            switch (e.kind) {
                case EventKind::Depart:
                    s.active = false;
                    s.job.reset();
                    break;
                case EventKind::Arrive:
                    s.active = true;
                    s.next_release = now;
                    break;
                case EventKind::SetFixedPeriod:
                    s.spec.cls = TaskClass::SoftFixed;
                    s.spec.fixed_period = e.period_ms;
                    break;
                case EventKind::ClearFixedPeriod:
                    s.spec.cls = s.spec.t_min ? TaskClass::SoftBounded : TaskClass::SoftUnbounded;
                    s.spec.fixed_period.reset();
                    break;
            }
            adjust(now, ei);
        }
    }

    void adjust(double now, std::size_t event_index) {
        Adjustment adj;
        adj.time_ms = now;
        adj.event_index = event_index;

        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < tasks_.size(); ++i)
            if (tasks_[i].active) active.push_back(i);

        double nominal = 0.0;
        for (std::size_t i : active) nominal += tasks_[i].spec.c / nominal_period(tasks_[i].spec);

        if (nominal <= sc_.u_d) {
            adj.verdict = Verdict::feasible();
            for (std::size_t i : active) tasks_[i].period = nominal_period(tasks_[i].spec);
        } else {
            const TaskSet subset(renormalized(active));
            PeriodTable periods;
            if (sc_.algorithm == Algorithm::PeriodAdjust) {
                auto pa = period_adjust(subset, sc_.u_d);
                adj.verdict = pa.verdict;
                periods = std::move(pa.periods);
            } else {
                auto er = task_compress(subset, sc_.u_d);
                adj.verdict = er.verdict;
                periods = std::move(er.periods);
            }
            if (adj.verdict.is_feasible())
                for (std::size_t i : active) tasks_[i].period = periods.at(tasks_[i].spec.name);
        }

        for (std::size_t i : active) adj.periods.set(tasks_[i].spec.name, tasks_[i].period);
        trace_.adjustments.push_back(std::move(adj));
    }

    // Active tasks with soft weights rescaled to sum to 1.
    std::vector<Task> renormalized(const std::vector<std::size_t>& active) const {
        std::vector<Task> out;
        double soft_sum = 0.0;
        std::size_t soft_count = 0;
        for (std::size_t i : active) {
            out.push_back(tasks_[i].spec);
            if (is_soft(out.back().cls)) {
                soft_sum += out.back().weight;
                ++soft_count;
            }
        }
        for (auto& t : out) {
            if (!is_soft(t.cls)) continue;
            t.weight = soft_sum > 0.0 ? t.weight / soft_sum : 1.0 / static_cast<double>(soft_count);
        }
        return out;
    }

    void release_jobs(double now) {
        for (auto& s : tasks_) {
            if (!s.active || s.next_release > now + kTimeEpsilon) continue;
            // With deadline = period the previous job has already been retired.
            const double release = s.next_release;
            s.job = Job{release, release + s.period, s.spec.c};
            s.next_release = release + s.period;
        }
    }

    void take_samples(double now) {
        for (;;) {
            const double at = static_cast<double>(next_sample_) * sc_.sample_interval_ms;
            if (at > now + kTimeEpsilon || at > sc_.duration_ms + kTimeEpsilon) return;
            for (const auto& s : tasks_)
                trace_.samples.push_back({at, s.spec.name, s.completed, s.period});
            ++next_sample_;
        }
    }

    std::optional<std::size_t> pick_job() const {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < tasks_.size(); ++i) {
            if (!tasks_[i].job) continue;
            if (!best || tasks_[i].job->deadline < tasks_[*best].job->deadline) best = i;
        }
        return best;
    }

    double next_instant(double now, std::optional<std::size_t> running) const {
        double next = sc_.duration_ms;
        if (next_event_ < order_.size()) next = std::min(next, sc_.events[order_[next_event_]].time_ms);
        next = std::min(next, static_cast<double>(next_sample_) * sc_.sample_interval_ms);
        for (const auto& s : tasks_) {
            if (s.active) next = std::min(next, s.next_release);
            if (s.job) next = std::min(next, s.job->deadline);
        }
        if (running) next = std::min(next, now + tasks_[*running].job->remaining);
        return std::max(next, now);
    }

    void record_busy(double from, double to, std::size_t task) {
        if (!options_.record_busy || to <= from) return;
        const auto& name = tasks_[task].spec.name;
        if (!trace_.busy.empty() && trace_.busy.back().task == name &&
            std::abs(trace_.busy.back().end_ms - from) <= kTimeEpsilon) {
            trace_.busy.back().end_ms = to;
            return;
        }
        trace_.busy.push_back({from, to, name});
    }

    const Scenario& sc_;
    SimOptions options_;
    std::vector<std::size_t> order_;
    std::size_t next_event_ = 0;
    std::uint64_t next_sample_ = 0;
    std::vector<TaskState> tasks_;
    SimTrace trace_;
};

}  // namespace

SimTrace simulate(const Scenario& sc, SimOptions options) {
    if (auto violations = validate_scenario(sc); !violations.empty())
        throw InvalidScenario(std::move(violations));
    return Simulator(sc, options).run();
}

std::uint64_t instance_count_oracle(double period_ms, double start_ms, double end_ms) {
    if (!(period_ms > 0.0) || end_ms < start_ms) return 0;
    return static_cast<std::uint64_t>(std::floor((end_ms - start_ms) / period_ms));
}

}  // namespace rtadapt
