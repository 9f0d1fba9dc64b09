#pragma once

#include "smw/simplex.hpp"

// Monte Carlo mean-width estimators. The direct estimator integrates twice
// the support function; the cell estimator splits the same integral over the
// nearest-vertex partition. Both consume the identical sample stream for a
// given (n, seed) and accumulate in the identical order, so the partition
// identity total = sum of cell contributions holds bit-for-bit.

namespace smw {

struct MeanWidthReport {
    MonteCarloEstimate total;
    std::vector<MonteCarloEstimate> per_cell;  // 2 * integral over V_i of x.v_i
    std::vector<double> cell_measures;         // empirical mu(V_i), sums to 1
};

/// Estimate of 2 E[max_i X.v_i] over the uniform sphere.
MonteCarloEstimate mean_width_mc(const EuclideanSimplex& simplex, std::int64_t n,
                                 std::uint64_t seed);

/// Per-cell decomposition of the same estimator.
MeanWidthReport mean_width_cells(const EuclideanSimplex& simplex, std::int64_t n,
                                 std::uint64_t seed);

}  // namespace smw
