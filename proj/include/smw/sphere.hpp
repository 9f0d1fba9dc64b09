#pragma once

#include <cstdint>
#include <vector>

#include "smw/errors.hpp"
#include "smw/montecarlo.hpp"

// Primitive operations on the unit sphere S^{d-1}, d >= 3.

namespace smw {

constexpr double kUnitNormTol = 1e-12;
constexpr double kAffineTol = 1e-10;
constexpr double kConeTol = -1e-10;

/// A point of S^{d-1}; the constructor enforces unit norm within 1e-12.
class UnitVector {
public:
    explicit UnitVector(Vec v);

    const Vec& coords() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[i]; }
    double dot(const UnitVector& other) const { return v_.dot(other.v_); }

    /// Geodesic (angular) distance to another unit vector.
    double angle_to(const UnitVector& other) const;

private:
    Vec v_;
};

/// Radial projection x -> x/|x|; throws ZeroVector when |x| < 1e-300.
UnitVector project(const Vec& x);

/// n i.i.d. uniform points on S^{d-1}, deterministic given the seed.
std::vector<UnitVector> sample_uniform(int d, std::int64_t n, std::uint64_t seed);

struct Ball {
    Vec center;
    double radius = 0.0;
};

/// Smallest ball containing all points (exhaustive support-subset search;
/// intended for small point sets such as simplex vertex lists).
Ball min_enclosing_ball(const std::vector<Vec>& points);

/// True iff the closed hemispheres centered at the vertices cover the sphere,
/// i.e. the origin lies in the convex hull of the vertices. Requires d+1
/// affinely independent vertices in R^d.
bool covers_sphere(const std::vector<UnitVector>& vertices);

}  // namespace smw
