#pragma once

#include <optional>

#include "smw/meanwidth.hpp"
#include "smw/regions.hpp"

// Centroid ascent: replace every vertex by the spherical centroid of its
// nearest-vertex cell. Each step keeps the mean width from decreasing (up to
// Monte Carlo noise), so iterating drives a covering simplex toward the
// regular one. The two switch verifiers check the exact shared-stream
// inequalities that make the step monotone.

namespace smw {

struct AscentStep {
    EuclideanSimplex simplex;
    MeanWidthReport report;
    double regularity = 0.0;
    /// Max angular vertex movement into this step; empty for the start.
    std::optional<double> movement;
};

struct AscentTrajectory {
    std::vector<AscentStep> steps;
    bool converged = false;
    int iterations = 0;
};

constexpr std::int64_t kEmptyCellMin = 10;

/// One centroid step: vertices become the spherical centroids of their cells.
EuclideanSimplex lloyd_step(const EuclideanSimplex& simplex, std::int64_t n, std::uint64_t seed);

/// Iterates lloyd_step with a fresh derived sample stream per iteration until
/// the max angular vertex movement drops below tol or max_iters is reached.
AscentTrajectory ascend(const EuclideanSimplex& simplex, double tol, int max_iters,
                        std::int64_t n, std::uint64_t seed);

struct SwitchCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Any measurable partition scores at most the nearest-vertex partition:
/// sum_i integral over R_i of x.v_i <= sum_i integral over V_i of x.v_i,
/// evaluated on one shared sample stream (deterministic).
SwitchCheck verify_switch_region(
    const EuclideanSimplex& simplex,
    const std::function<int(const double*, std::int64_t)>& partition_assignment, std::int64_t n,
    std::uint64_t seed);

/// For a fixed region, integral of x.X is maximized at X = centroid:
/// (sum x).X <= |sum x|, evaluated on one shared sample stream.
SwitchCheck verify_switch_point(const Region& region, const UnitVector& x, std::int64_t n,
                                std::uint64_t seed);

struct NecessaryConditions {
    bool smallest_ball_is_unit = false;
    bool unit_vertices = false;
    bool hemispheres_cover = false;
};

/// The three first-order requirements for a mean-width maximizer.
NecessaryConditions check_necessary_conditions(const EuclideanSimplex& simplex);

/// Raw-point variant; admits scaled or degenerate vertex sets.
NecessaryConditions check_necessary_conditions(const std::vector<Vec>& vertices);

}  // namespace smw
