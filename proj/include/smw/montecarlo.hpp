#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

#include "smw/rng.hpp"

// Chunked, reproducible Monte Carlo over the unit sphere.
//
// A sample stream is fully determined by (dim, n, seed): samples are produced
// in fixed-size chunks, chunk c drawing from a generator seeded with
// derive_seed(seed, c). Chunks may be processed on any number of threads;
// per-chunk partial statistics are reduced in chunk-index order (Kahan), so
// every result is bit-reproducible regardless of parallelism.

namespace smw {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Scalar integral estimate with its sampling error.
struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

namespace mc {

constexpr std::int64_t kChunkSize = 1 << 15;

inline std::int64_t chunk_count(std::int64_t n) {
    return (n + kChunkSize - 1) / kChunkSize;
}

/// Fills `out` (rows x d) with uniform points of chunk `chunk_index`.
void fill_sphere_chunk(int d, std::uint64_t seed, std::int64_t chunk_index,
                       std::int64_t rows, RowMat& out);

/// Runs `fn(points, rows, chunk_index)` over every chunk of the stream,
/// possibly in parallel, and returns the per-chunk results in stream order.
template <class Stat, class Fn>
std::vector<Stat> map_sample_chunks(int d, std::int64_t n, std::uint64_t seed, Fn&& fn);

namespace detail {

void run_chunk_loop(std::int64_t num_chunks,
                    const std::function<void(std::int64_t)>& body);

}  // namespace detail

template <class Stat, class Fn>
std::vector<Stat> map_sample_chunks(int d, std::int64_t n, std::uint64_t seed, Fn&& fn) {
    const std::int64_t chunks = chunk_count(n);
    std::vector<Stat> stats(static_cast<std::size_t>(chunks));
    detail::run_chunk_loop(chunks, [&](std::int64_t c) {
        thread_local RowMat buffer;
        const std::int64_t begin = c * kChunkSize;
        const std::int64_t rows = std::min<std::int64_t>(kChunkSize, n - begin);
        fill_sphere_chunk(d, seed, c, rows, buffer);
        stats[static_cast<std::size_t>(c)] = fn(buffer, rows, c);
    });
    return stats;
}

}  // namespace mc

/// Mean/std-error pair reduced from per-chunk (sum, sum of squares) partials,
/// combined in chunk order.
MonteCarloEstimate reduce_mean_estimate(const std::vector<std::pair<double, double>>& partials,
                                        std::int64_t n, std::uint64_t seed);

}  // namespace smw
