#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "smw/shear.hpp"
#include "smw/simplex.hpp"

// Spherical regions as indicator predicates sampled by rejection from the
// uniform sphere, spherical centroids, longitudinal strips (slices by the
// slope t = x2/x1), and the two shear-strip experiments.

namespace smw {

constexpr double kResultantTol = 1e-6;
constexpr double kStripX1Min = 1e-12;

struct Region {
    std::function<bool(const double*)> contains;
    std::string label;
    bool hemisphere_safe = false;  // asserted subset of {x1 >= 0}
    int dim = 0;
};

Region hemisphere_region(int d);
Region cap_region(const UnitVector& pole, double height);
Region spherical_simplex_region(SphericalSimplex simplex, bool hemisphere_safe = false);
/// Image region f_s(S): membership tested through the inverse shear.
Region sheared_region(const Region& base, const ShearMap& shear);

/// Half-open slope interval [t_lo, t_hi).
struct StripInterval {
    double t_lo;
    double t_hi;

    StripInterval(double lo, double hi);
    bool contains_slope(double t) const { return t >= t_lo && t < t_hi; }
};

struct CentroidEstimate {
    UnitVector direction;
    double resultant_norm = 0.0;    // estimate of |integral of x over R|
    double angular_std_error = 0.0; // delta-method error of the direction
    MonteCarloEstimate measure;
    std::int64_t accepted = 0;
};

/// Spherical centroid: projection of the empirical resultant of the region.
CentroidEstimate centroid(const Region& region, std::int64_t n, std::uint64_t seed);

/// Integral over {x in region : x1 > 0, x2/x1 in interval} of coordinate 1
/// or 2 (1-based, matching the axis names).
MonteCarloEstimate strip_integral(const Region& region, const StripInterval& interval,
                                  int coordinate, std::int64_t n, std::uint64_t seed);

enum class Verdict { consistent, violated, inconclusive };

std::string to_string(Verdict v);

/// Both sides of the shear-strip ratio comparison: integrals of x1 over the
/// sheared and plain region, on the earlier strip [t1-s, t2-s) and the later
/// strip [t1, t2), from one shared sample stream.
struct StripRatioRecord {
    double s = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    // order: sheared/earlier, plain/earlier, sheared/later, plain/later
    std::array<double, 4> integrals{};
    std::array<double, 4> integral_std_errors{};
    std::array<double, 2> ratios{};
    std::array<double, 2> ratio_std_errors{};
    double gap = 0.0;        // later ratio minus earlier ratio
    double gap_std_error = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

StripRatioRecord strip_ratio_experiment(const SphericalSimplex& simplex, double s, double t1,
                                        double t2, std::int64_t n, std::uint64_t seed,
                                        bool test_mode = false);

/// Centroid slope G(f_s(S)).e2 / G(f_s(S)).e1 for a sweep of shear values,
/// all measured on the same sample stream.
struct CentroidSlopeSweep {
    std::vector<double> s_values;
    std::vector<double> slopes;
    std::vector<double> slope_std_errors;
    std::vector<double> acceptance_rates;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::inconclusive;  // consistent = strictly increasing at 3 sigma
};

CentroidSlopeSweep centroid_uniqueness_experiment(const SphericalSimplex& simplex,
                                                  const std::vector<double>& s_values,
                                                  std::int64_t n, std::uint64_t seed);

}  // namespace smw
