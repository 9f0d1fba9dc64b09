#include "smw/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace smw {
namespace mc {

void fill_sphere_chunk(int d, std::uint64_t seed, std::int64_t chunk_index,
                       std::int64_t rows, RowMat& out) {
    if (out.rows() < rows || out.cols() != d) out.resize(kChunkSize, d);
    rng::NormalSampler gauss(rng::derive_seed(seed, static_cast<std::uint64_t>(chunk_index)));
    for (std::int64_t i = 0; i < rows; ++i) {
        double norm_sq = 0.0;
        double* row = out.row(i).data();
        for (int j = 0; j < d; ++j) {
            const double g = gauss();
            row[j] = g;
            norm_sq += g * g;
        }
        if (norm_sq < 1e-280) {  // unreachable in practice
            row[0] = 1.0;
            for (int j = 1; j < d; ++j) row[j] = 0.0;
            continue;
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (int j = 0; j < d; ++j) row[j] *= inv;
    }
}

namespace detail {

void run_chunk_loop(std::int64_t num_chunks,
                    const std::function<void(std::int64_t)>& body) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SMW_THREADS")) {
        const int requested = std::atoi(env);
        if (requested > 0) hw = static_cast<unsigned>(requested);
    }
    const std::int64_t workers =
        std::min<std::int64_t>(static_cast<std::int64_t>(hw), num_chunks);
    if (workers <= 1) {
        for (std::int64_t c = 0; c < num_chunks; ++c) body(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::int64_t c = next.fetch_add(1);
            if (c >= num_chunks) return;
            try {
                body(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (std::int64_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail
}  // namespace mc

MonteCarloEstimate reduce_mean_estimate(const std::vector<std::pair<double, double>>& partials,
                                        std::int64_t n, std::uint64_t seed) {
    KahanSum sum, sum_sq;
    for (const auto& [s, sq] : partials) {
        sum.add(s);
        sum_sq.add(sq);
    }
    MonteCarloEstimate est;
    est.n_samples = n;
    est.seed = seed;
    est.value = sum.value() / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq.value() - sum.value() * est.value) / static_cast<double>(n - 1));
        est.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return est;
}

}  // namespace smw
