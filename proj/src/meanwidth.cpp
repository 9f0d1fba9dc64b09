#include "smw/meanwidth.hpp"

#include <algorithm>
#include <cmath>

namespace smw {

namespace {

constexpr std::int64_t kMinSamples = 1000;

// Per-chunk sums of the per-sample value 2*max_i x.v_i, grouped by winning
// cell, plus the sum of squares. Reduced in chunk order, these make the two
// estimators bit-identical and the cell decomposition exact.
struct CellPartial {
    std::vector<double> cell_sums;
    std::vector<double> cell_sq_sums;
    std::vector<std::int64_t> counts;
};

template <class AssignFn>
std::vector<CellPartial> accumulate_cells(const EuclideanSimplex& simplex, std::int64_t n,
                                          std::uint64_t seed, AssignFn&& assign) {
    const int k = simplex.vertex_count();
    return mc::map_sample_chunks<CellPartial>(
        simplex.dim(), n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            CellPartial partial;
            partial.cell_sums.assign(static_cast<std::size_t>(k), 0.0);
            partial.cell_sq_sums.assign(static_cast<std::size_t>(k), 0.0);
            partial.counts.assign(static_cast<std::size_t>(k), 0);
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                const auto [cell, value] = assign(x);
                partial.cell_sums[static_cast<std::size_t>(cell)] += value;
                partial.cell_sq_sums[static_cast<std::size_t>(cell)] += value * value;
                partial.counts[static_cast<std::size_t>(cell)] += 1;
            }
            return partial;
        });
}

MeanWidthReport reduce_report(const std::vector<CellPartial>& partials, int k, std::int64_t n,
                              std::uint64_t seed) {
    std::vector<KahanSum> sums(static_cast<std::size_t>(k));
    std::vector<KahanSum> sq_sums(static_cast<std::size_t>(k));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    for (const auto& p : partials)
        for (int j = 0; j < k; ++j) {
            sums[static_cast<std::size_t>(j)].add(p.cell_sums[static_cast<std::size_t>(j)]);
            sq_sums[static_cast<std::size_t>(j)].add(p.cell_sq_sums[static_cast<std::size_t>(j)]);
            counts[static_cast<std::size_t>(j)] += p.counts[static_cast<std::size_t>(j)];
        }

    MeanWidthReport report;
    report.per_cell.resize(static_cast<std::size_t>(k));
    report.cell_measures.resize(static_cast<std::size_t>(k));
    const double inv_n = 1.0 / static_cast<double>(n);
    double total_value = 0.0;
    double total_sq = 0.0;
    for (int j = 0; j < k; ++j) {
        const double s = sums[static_cast<std::size_t>(j)].value();
        const double sq = sq_sums[static_cast<std::size_t>(j)].value();
        auto& cell = report.per_cell[static_cast<std::size_t>(j)];
        cell.value = s * inv_n;
        cell.n_samples = n;
        cell.seed = seed;
        // per-sample value is 2*max on the cell indicator, zero elsewhere
        const double var = std::max(0.0, (sq - s * s * inv_n) / static_cast<double>(n - 1));
        cell.std_error = std::sqrt(var * inv_n);
        report.cell_measures[static_cast<std::size_t>(j)] =
            static_cast<double>(counts[static_cast<std::size_t>(j)]) * inv_n;
        total_value += cell.value;
        total_sq += sq;
    }
    const double total_sum = total_value * static_cast<double>(n);
    report.total.value = total_value;
    report.total.n_samples = n;
    report.total.seed = seed;
    const double var =
        std::max(0.0, (total_sq - total_sum * total_sum * inv_n) / static_cast<double>(n - 1));
    report.total.std_error = std::sqrt(var * inv_n);
    return report;
}

void check_inputs(const EuclideanSimplex&, std::int64_t n) {
    if (n < kMinSamples) throw DomainError("mean width estimators require n >= 1000");
}

}  // namespace

MonteCarloEstimate mean_width_mc(const EuclideanSimplex& simplex, std::int64_t n,
                                 std::uint64_t seed) {
    check_inputs(simplex, n);
    const Mat& m = simplex.vertex_matrix();
    const int d = simplex.dim();
    const int k = simplex.vertex_count();
    auto partials = accumulate_cells(simplex, n, seed, [&](const double* x) {
        int best = 0;
        double best_dot = -2.0;
        for (int j = 0; j < k; ++j) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += m(i, j) * x[i];
            if (dot > best_dot) {
                best_dot = dot;
                best = j;
            }
        }
        return std::pair<int, double>(best, 2.0 * best_dot);
    });
    return reduce_report(partials, k, n, seed).total;
}

MeanWidthReport mean_width_cells(const EuclideanSimplex& simplex, std::int64_t n,
                                 std::uint64_t seed) {
    check_inputs(simplex, n);
    const Mat& m = simplex.vertex_matrix();
    const int d = simplex.dim();
    auto partials = accumulate_cells(simplex, n, seed, [&](const double* x) {
        const int cell = voronoi_assign(simplex, x);
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += m(i, cell) * x[i];
        return std::pair<int, double>(cell, 2.0 * dot);
    });
    return reduce_report(partials, simplex.vertex_count(), n, seed);
}

}  // namespace smw
