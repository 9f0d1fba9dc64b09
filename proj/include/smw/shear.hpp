#pragma once

#include "smw/sphere.hpp"

// The longitudinal shift f_s: the unit-determinant shear that adds s*x1 to
// the second coordinate, followed by radial projection back onto the sphere.
// It forms a one-parameter group, maps great spheres to great spheres, and
// has an explicit surface Jacobian and pushforward density.

namespace smw {

class ShearMap {
public:
    ShearMap(double s, int dim);

    double s() const { return s_; }
    int dim() const { return dim_; }

    /// f_s(x) = project(M_s x).
    UnitVector apply(const UnitVector& x) const;

    /// In-place raw variant for sampling loops: y = f_s(x), both length dim().
    void apply(const double* x, double* y) const;

    /// Surface Jacobian Df_s(x) = (1 + (x2 + s*x1)^2 - x2^2)^(-d/2).
    double jacobian(const UnitVector& x) const;
    double jacobian(const double* x) const;

    /// Density of the pushforward of the uniform measure under f_s,
    /// equal to the Jacobian of the inverse shear: Df_{-s}(x).
    double pushforward_density(const UnitVector& x) const;
    double pushforward_density(const double* x) const;

    /// Pole of the image of the great sphere with pole P:
    /// project(transpose(M_{-s}) P).
    UnitVector map_pole(const UnitVector& pole) const;

    ShearMap inverse() const { return ShearMap(-s_, dim_); }

private:
    double s_;
    int dim_;
};

}  // namespace smw
