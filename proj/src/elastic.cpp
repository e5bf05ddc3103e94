#include "rtadapt/elastic.hpp"

#include <stdexcept>
#include <vector>

#include "rtadapt/period_adjust.hpp"

namespace rtadapt {

ElasticResult task_compress(const TaskSet& ts, double u_d) {
    if (!(u_d > 0.0) || u_d > 1.0) throw std::domain_error("u_d must lie in (0, 1]");

    ElasticResult result;
    for (const auto& t : ts) {
        if (t.cls == TaskClass::SoftUnbounded) {
            result.verdict = Verdict::infeasible(Infeasibility::UnboundedTaskPresent);
            return result;
        }
    }

    const std::size_t n = ts.size();
    std::vector<double> util(n);
    std::vector<bool> compressible(n, false);
    double nominal_total = 0.0;
    double floor_total = 0.0;  // every compressible task at T_max

    for (std::size_t i = 0; i < n; ++i) {
        const Task& t = ts[i];
        util[i] = t.c / nominal_period(t);
        nominal_total += util[i];
        compressible[i] = t.cls == TaskClass::SoftBounded && t.elastic_coeff.value_or(0.0) > 0.0;
        floor_total += compressible[i] ? t.c / *t.t_max : util[i];
    }

    if (nominal_total <= u_d) {
        result.iterations = 1;
        for (const auto& t : ts) result.periods.set(t.name, nominal_period(t));
        result.verdict = Verdict::feasible();
        return result;
    }
    if (floor_total > u_d * (1.0 + kClampTolerance)) {
        result.verdict = Verdict::infeasible(Infeasibility::Overcompressed);
        return result;
    }

    std::vector<double> period(n);
    for (std::size_t i = 0; i < n; ++i) period[i] = nominal_period(ts[i]);

    for (;;) {
        ++result.iterations;

        double fixed_util = 0.0;
        double elastic_util = 0.0;
        double coeff_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (compressible[i]) {
                elastic_util += util[i];
                coeff_sum += *ts[i].elastic_coeff;
            } else {
                fixed_util += ts[i].c / period[i];
            }
        }
        if (coeff_sum == 0.0) break;

        const double excess = fixed_util + elastic_util - u_d;
        bool clamped = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!compressible[i]) continue;
            const Task& t = ts[i];
            const double u = util[i] - excess * *t.elastic_coeff / coeff_sum;
            const double u_min = t.c / *t.t_max;
            if (u < u_min * (1.0 - kClampTolerance)) {
                period[i] = *t.t_max;
                compressible[i] = false;
                clamped = true;
            } else {
                period[i] = t.c / u;
            }
        }
        if (!clamped) break;
    }

    for (std::size_t i = 0; i < n; ++i) result.periods.set(ts[i].name, period[i]);
    result.verdict = Verdict::feasible();
    return result;
}

}  // namespace rtadapt
