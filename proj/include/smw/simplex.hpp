#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "smw/sphere.hpp"

// Euclidean simplexes inscribed in the unit ball and spherical simplexes
// (cone hulls of d unit vectors), together with the support function and the
// nearest-vertex (spherical image) partition.

namespace smw {

/// Simplex with unit vertices v_0..v_d. The inscribed() factory enforces
/// d+1 affinely independent unit vertices; test_body() admits degenerate
/// bodies (points, segments, scaled vertex sets) used by analytic checks.
class EuclideanSimplex {
public:
    static EuclideanSimplex inscribed(std::vector<UnitVector> vertices);
    static EuclideanSimplex test_body(std::vector<Vec> points);

    int dim() const { return dim_; }
    int vertex_count() const { return static_cast<int>(matrix_.cols()); }

    /// Vertex as a unit vector; throws for non-unit test bodies.
    UnitVector vertex(int i) const { return UnitVector(matrix_.col(i)); }
    std::vector<UnitVector> vertices() const;

    /// Vertices as columns of a d x (d+1) matrix.
    const Mat& vertex_matrix() const { return matrix_; }

    bool is_full_simplex() const { return full_; }

private:
    EuclideanSimplex(Mat matrix, bool full) : matrix_(std::move(matrix)), full_(full) {
        dim_ = static_cast<int>(matrix_.rows());
    }

    Mat matrix_;
    int dim_ = 0;
    bool full_ = false;
};

/// Cone hull of d linearly independent unit generators, intersected with the
/// sphere. Membership is decided by the signs of the cone coordinates.
class SphericalSimplex {
public:
    explicit SphericalSimplex(std::vector<UnitVector> generators);

    int dim() const { return dim_; }
    const std::vector<UnitVector>& generators() const { return generators_; }

    bool contains(const UnitVector& x) const;
    /// Raw-pointer variant for sampling loops; `x` holds dim() coordinates.
    bool contains(const double* x) const;

    /// Cone coordinates c with sum_j c_j g_j = x.
    Vec cone_coordinates(const UnitVector& x) const;

private:
    std::vector<UnitVector> generators_;
    Mat inverse_;  // rows map x to cone coordinates
    int dim_ = 0;
};

/// Pairwise vertex dot products; isometry-invariant shape descriptor.
struct GramSignature {
    Mat gram;

    static GramSignature of(const EuclideanSimplex& simplex);
};

/// Support function h(x) = max_i x . v_i.
double support(const EuclideanSimplex& simplex, const UnitVector& x);

/// Index of the vertex attaining the support maximum; ties break low.
int voronoi_assign(const EuclideanSimplex& simplex, const UnitVector& x);
int voronoi_assign(const EuclideanSimplex& simplex, const double* x);

/// Spherical circumcenters C_i of the faces opposite each vertex, radially
/// projected onto the sphere.
std::vector<UnitVector> circumcenters(const EuclideanSimplex& simplex);

/// Frobenius distance of the Gram matrix from the regular-simplex Gram
/// (unit diagonal, off-diagonal -1/d).
double regularity_distance(const EuclideanSimplex& simplex);

bool spherical_simplex_contains(const SphericalSimplex& ss, const UnitVector& x);

// Constructions used by the CLI and the experiments.

/// Regular simplex inscribed in the unit sphere (Helmert-basis construction).
EuclideanSimplex regular_simplex(int d);

/// Rejection-samples vertex sets until covers_sphere holds.
EuclideanSimplex random_covering_simplex(int d, std::uint64_t seed);

/// Regular simplex with vertex 0 rotated by `angle` along a seeded tangent.
EuclideanSimplex perturbed_regular_simplex(int d, double angle, std::uint64_t seed);

/// Haar-ish random rotation applied to every vertex (QR of a Gaussian matrix).
EuclideanSimplex rotate_simplex(const EuclideanSimplex& simplex, std::uint64_t seed);

}  // namespace smw
