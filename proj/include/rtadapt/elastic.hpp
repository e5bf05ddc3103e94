#pragma once

#include <cstddef>

#include "rtadapt/task_model.hpp"
#include "rtadapt/verdict.hpp"

namespace rtadapt {

struct ElasticResult {
    Verdict verdict;
    PeriodTable periods;  // empty unless feasible
    std::size_t iterations = 0;

    bool operator==(const ElasticResult&) const = default;
};

/// Elastic task compression baseline.
///
/// Every soft task with a positive elastic coefficient and not yet at its
/// maximum period is compressible; everything else (hard, soft-fixed, E = 0
/// or no coefficient) stays at its nominal period. Each round shrinks the
/// compressible utilizations in proportion to their coefficients so the total
/// lands on u_d:
///
///     U_i = U_i0 - (U_total0 - u_d) * E_i / E_sum
///
/// A task pushed below C_i / T_max is pinned at T_max and the round repeats.
/// Soft-unbounded tasks make the model inapplicable.
ElasticResult task_compress(const TaskSet& ts, double u_d);

}  // namespace rtadapt
