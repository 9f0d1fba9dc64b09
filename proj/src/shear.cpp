#include "smw/shear.hpp"

#include <cmath>

namespace smw {

ShearMap::ShearMap(double s, int dim) : s_(s), dim_(dim) {
    if (dim < 3) throw DomainError("ShearMap requires d >= 3");
    if (!std::isfinite(s)) throw DomainError("shear parameter must be finite");
}

void ShearMap::apply(const double* x, double* y) const {
    const double sheared = x[1] + s_ * x[0];
    // |M_s x|^2 = 1 + sheared^2 - x2^2 for unit x
    const double norm = std::sqrt(1.0 + (sheared - x[1]) * (sheared + x[1]));
    const double inv = 1.0 / norm;
    y[0] = x[0] * inv;
    y[1] = sheared * inv;
    for (int i = 2; i < dim_; ++i) y[i] = x[i] * inv;
}

UnitVector ShearMap::apply(const UnitVector& x) const {
    Vec y(dim_);
    apply(x.coords().data(), y.data());
    return project(y);
}

double ShearMap::jacobian(const double* x) const {
    const double sheared = x[1] + s_ * x[0];
    const double norm_sq = 1.0 + (sheared - x[1]) * (sheared + x[1]);
    return std::pow(norm_sq, -0.5 * dim_);
}

double ShearMap::jacobian(const UnitVector& x) const { return jacobian(x.coords().data()); }

double ShearMap::pushforward_density(const double* x) const {
    return inverse().jacobian(x);
}

double ShearMap::pushforward_density(const UnitVector& x) const {
    return pushforward_density(x.coords().data());
}

UnitVector ShearMap::map_pole(const UnitVector& pole) const {
    Vec p = pole.coords();
    p[0] -= s_ * p[1];  // transpose(M_{-s}) acts on the first coordinate
    return project(p);
}

}  // namespace smw
