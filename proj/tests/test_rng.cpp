#include "smw/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

using namespace smw;

TEST_SUITE("rng") {

TEST_CASE("derive_seed separates streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 1000; ++stream)
        seen.insert(rng::derive_seed(42, stream));
    CHECK(seen.size() == 1000);
    CHECK(rng::derive_seed(1, 0) != rng::derive_seed(2, 0));
}

TEST_CASE("xoshiro sequences are reproducible") {
    rng::Xoshiro256pp a(123456789);
    rng::Xoshiro256pp b(123456789);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("uniform doubles stay in range with correct mean") {
    rng::Xoshiro256pp gen(7);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = gen.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    // sd of the mean = 1/sqrt(12 n)
    CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("normal sampler has unit variance") {
    rng::NormalSampler gauss(99);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = gauss();
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

}  // TEST_SUITE
