#pragma once

#include <array>
#include <string>
#include <vector>

#include "smw/sphere.hpp"

// Two inequality tools: the eight-number aggregation lemma that combines two
// ratio comparisons into one (with an exact decomposition identity), and a
// grid verifier for the spherical Prekopa-Leindler inequality built from the
// minimal admissible midpoint envelope.

namespace smw {

struct EightTuple {
    std::array<double, 2> a;
    std::array<double, 2> b;
    std::array<double, 2> alpha;
    std::array<double, 2> beta;
};

struct AggregationResult {
    bool hypothesis_holds = false;
    bool conclusion_holds = false;
    double identity_residual = 0.0;  // relative residual of the decomposition
};

/// Forward form: a_i/alpha_i <= b_i/beta_i, a_1/alpha_1 <= a_2/alpha_2 and
/// alpha_2/alpha_1 <= beta_2/beta_1 together imply
/// (a_1+a_2)/(alpha_1+alpha_2) <= (b_1+b_2)/(beta_1+beta_2).
AggregationResult simpson_antidote(const EightTuple& t);

/// Variant with the middle and right hypothesis inequalities reversed.
AggregationResult reversed_simpson_antidote(const EightTuple& t);

/// C = cos(theta/2); callers raise it to the power d-3.
double pl_constant(double theta, int d);

/// Point of the geodesic through q1 and q3 weighted as
/// project(q1 sin(lambda theta) + q3 sin((1-lambda) theta)); lambda = 1/2
/// gives the midpoint, lambda in {0,1} give q3 and q1 respectively.
UnitVector geodesic_combine(const UnitVector& q1, const UnitVector& q3, double lambda);

/// sin(theta)/theta with the removable singularity at 0.
double sinc(double theta);

/// Nonnegative function sampled on a fixed grid over S^{d-2}; supported grids
/// are the circle (ambient d = 3) and the latitude-longitude sphere grid
/// (ambient d = 4).
class SphereFunction {
public:
    /// Circle grid with equally spaced angles 2*pi*k/N; the resolution N
    /// must be a power of two (at least 8).
    static SphereFunction circle(std::vector<double> values);
    /// Sphere grid with n_theta x n_phi equiangular midpoint nodes.
    static SphereFunction sphere(int n_theta, int n_phi, std::vector<double> values);

    int ambient_dim() const { return ambient_dim_; }
    int node_count() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Normalized-measure integral: sum of value * weight.
    double integral() const;

    Vec node(int i) const;
    bool same_grid(const SphereFunction& other) const;

    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }

private:
    SphereFunction() = default;

    int ambient_dim_ = 3;
    int n_theta_ = 0;  // sphere grid only
    int n_phi_ = 0;
    std::vector<double> values_;
    std::vector<double> weights_;
};

/// Loads a circle-grid function from CSV lines "angle,value" (optionally with
/// a header). Angles must be the equally spaced grid in order.
SphereFunction load_circle_csv(const std::string& path, int value_column = 1);

struct SplResult {
    double lhs = 0.0;  // integral of the constructed envelope h
    double rhs = 0.0;  // (integral f)^(1-lambda) * (integral g)^lambda
    bool holds = false;
    bool empty_support = false;
    std::vector<double> envelope;  // the constructed h, for inspection
};

/// Builds the minimal admissible h by maximizing the hypothesis bound over
/// all support pairs (nearest-node snapping for the combined point), then
/// checks integral(h) >= rhs * (1 - slack).
SplResult spl_verify(const SphereFunction& f, const SphereFunction& g, double lambda,
                     double slack);

}  // namespace smw
