#pragma once

// Test-only oracles and generators. Nothing here calls into the algorithms
// under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rtadapt/task_model.hpp"

namespace rtadapt::testing {

inline std::filesystem::path scenario_path(const std::string& name) {
    return std::filesystem::path(RTADAPT_SCENARIO_DIR) / name;
}

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(RTADAPT_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::filesystem::path fresh_dir(const std::string& tag) {
    static std::uint64_t counter = 0;
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    auto dir = std::filesystem::temp_directory_path() /
               ("rtadapt-" + tag + "-" + std::to_string(stamp) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

/// One adjustable-task period straight from the weighted-share formula:
/// C / ((w + pool / n) * U_s).
inline double share_period(double c, double weight, double fixed_weight_pool,
                           double n_adjustable, double u_soft) {
    return c / ((weight + fixed_weight_pool / n_adjustable) * u_soft);
}

/// One elastic compression step for a single task: U0 - excess * E / E_sum.
inline double compressed_utilization(double u0, double excess, double e, double e_sum) {
    return u0 - excess * e / e_sum;
}

/// Work released strictly before `t` by a synchronous static periodic set.
inline double released_work_before(const std::vector<Task>& tasks, double t) {
    double work = 0.0;
    for (const auto& task : tasks) work += std::ceil(t / task.t0 - 1e-12) * task.c;
    return work;
}

/// Uniform point on the (n-1)-simplex via normalized exponentials.
inline std::vector<double> simplex(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& x : w) {
        x = exp1(rng) + 1e-6;
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return w;
}

/// UUniFast: n utilizations summing to `total`.
inline std::vector<double> uunifast(std::size_t n, double total, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> u(n);
    double sum = total;
    for (std::size_t i = 1; i < n; ++i) {
        const double next = sum * std::pow(unit(rng), 1.0 / static_cast<double>(n - i));
        u[i - 1] = sum - next;
        sum = next;
    }
    u[n - 1] = sum;
    return u;
}

/// Random validated-by-construction task list for the adjustment algorithms:
/// up to `max_n` tasks, at least one adjustable task, soft weights on the
/// simplex. Hard load stays modest so a useful share of sets is feasible.
inline std::vector<Task> random_adjustable_tasks(std::mt19937_64& rng, std::size_t max_n = 12) {
    std::uniform_int_distribution<std::size_t> count(1, max_n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> exec(1.0, 30.0);

    const std::size_t n = count(rng);
    std::vector<TaskClass> classes(n);
    for (auto& cls : classes) {
        const double r = unit(rng);
        cls = r < 0.1 ? TaskClass::Hard
              : r < 0.3 ? TaskClass::SoftFixed
              : r < 0.7 ? TaskClass::SoftBounded
                        : TaskClass::SoftUnbounded;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t forced = pick(rng);
    if (!is_adjustable(classes[forced]))
        classes[forced] = unit(rng) < 0.5 ? TaskClass::SoftBounded : TaskClass::SoftUnbounded;

    const std::size_t n_soft =
        static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), is_soft));
    const auto weights = simplex(n_soft, rng);

    std::vector<Task> tasks;
    std::size_t soft_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Task t;
        t.name = "t" + std::to_string(i);
        t.cls = classes[i];
        t.c = exec(rng);
        switch (t.cls) {
            case TaskClass::Hard:
                t.t0 = t.c * (10.0 + 40.0 * unit(rng));
                t.fixed_period = t.t0;
                t.weight = 1.0;
                break;
            case TaskClass::SoftFixed:
                t.t0 = t.c * (2.0 + 10.0 * unit(rng));
                t.fixed_period = t.c * (4.0 + 30.0 * unit(rng));
                break;
            case TaskClass::SoftBounded:
                t.t_min = t.c * (1.0 + 3.0 * unit(rng));
                t.t0 = *t.t_min * (1.0 + 2.0 * unit(rng));
                t.t_max = t.t0 * (1.0 + 4.0 * unit(rng));
                break;
            case TaskClass::SoftUnbounded:
                t.t0 = t.c * (1.0 + 10.0 * unit(rng));
                break;
        }
        if (is_soft(t.cls)) t.weight = weights[soft_i++];
        if (unit(rng) < 0.7) t.elastic_coeff = unit(rng) * 3.0;
        tasks.push_back(std::move(t));
    }
    return tasks;
}

/// Same shape as random_adjustable_tasks but with only bounded soft tasks and
/// hard/soft-fixed ones, all carrying elastic coefficients.
inline std::vector<Task> random_elastic_tasks(std::mt19937_64& rng, std::size_t max_n = 12) {
    auto tasks = random_adjustable_tasks(rng, max_n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& t : tasks) {
        if (t.cls == TaskClass::SoftUnbounded) {
            t.cls = TaskClass::SoftBounded;
            t.t_min = t.c;
            t.t_max = t.t0 * (1.0 + 4.0 * unit(rng));
        }
        if (t.cls == TaskClass::SoftBounded) t.elastic_coeff = 0.1 + 2.9 * unit(rng);
    }
    return tasks;
}

/// Static hard-task set with total utilization `total` (<= 1 for EDF checks)
/// and integer periods in [10, 200].
inline std::vector<Task> random_static_tasks(std::mt19937_64& rng, std::size_t n, double total) {
    std::uniform_int_distribution<int> period(10, 200);
    const auto util = uunifast(n, total, rng);
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < n; ++i) {
        Task t;
        t.name = "s" + std::to_string(i);
        t.cls = TaskClass::Hard;
        t.t0 = period(rng);
        t.fixed_period = t.t0;
        t.c = std::max(util[i], 1e-4) * t.t0;
        if (t.c > t.t0) t.c = t.t0;
        tasks.push_back(std::move(t));
    }
    return tasks;
}

/// Multiplies every time field by k.
inline std::vector<Task> scaled(std::vector<Task> tasks, double k) {
    for (auto& t : tasks) {
        t.c *= k;
        t.t0 *= k;
        if (t.t_min) *t.t_min *= k;
        if (t.t_max) *t.t_max *= k;
        if (t.fixed_period) *t.fixed_period *= k;
    }
    return tasks;
}

}  // namespace rtadapt::testing
