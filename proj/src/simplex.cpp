#include "smw/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace smw {

EuclideanSimplex EuclideanSimplex::inscribed(std::vector<UnitVector> vertices) {
    if (vertices.empty()) throw DomainError("simplex requires vertices");
    const int d = vertices.front().dim();
    if (static_cast<int>(vertices.size()) != d + 1)
        throw DegenerateSimplex("inscribed simplex requires d+1 vertices");
    for (const auto& v : vertices)
        if (v.dim() != d) throw DomainError("vertex dimensions differ");
    Mat edges(d, d);
    for (int j = 1; j <= d; ++j)
        edges.col(j - 1) = vertices[static_cast<std::size_t>(j)].coords() - vertices[0].coords();
    Eigen::JacobiSVD<Mat> svd(edges);
    if (svd.singularValues()[d - 1] < kAffineTol)
        throw DegenerateSimplex("vertices are affinely dependent");
    Mat matrix(d, d + 1);
    for (int j = 0; j <= d; ++j) matrix.col(j) = vertices[static_cast<std::size_t>(j)].coords();
    return EuclideanSimplex(std::move(matrix), true);
}

EuclideanSimplex EuclideanSimplex::test_body(std::vector<Vec> points) {
    if (points.empty()) throw DomainError("test body requires vertices");
    const int d = static_cast<int>(points.front().size());
    if (d < 3) throw DomainError("test body requires d >= 3");
    Mat matrix(d, static_cast<int>(points.size()));
    for (int j = 0; j < static_cast<int>(points.size()); ++j) {
        if (static_cast<int>(points[static_cast<std::size_t>(j)].size()) != d)
            throw DomainError("vertex dimensions differ");
        matrix.col(j) = points[static_cast<std::size_t>(j)];
    }
    return EuclideanSimplex(std::move(matrix), false);
}

std::vector<UnitVector> EuclideanSimplex::vertices() const {
    std::vector<UnitVector> out;
    out.reserve(static_cast<std::size_t>(vertex_count()));
    for (int j = 0; j < vertex_count(); ++j) out.push_back(vertex(j));
    return out;
}

SphericalSimplex::SphericalSimplex(std::vector<UnitVector> generators)
    : generators_(std::move(generators)) {
    if (generators_.empty()) throw DomainError("spherical simplex requires generators");
    dim_ = generators_.front().dim();
    if (static_cast<int>(generators_.size()) != dim_)
        throw SingularGenerators("spherical simplex requires d generators in R^d");
    Mat basis(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
        basis.col(j) = generators_[static_cast<std::size_t>(j)].coords();
    Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()[dim_ - 1] < kAffineTol)
        throw SingularGenerators("generators are linearly dependent");
    inverse_ = basis.partialPivLu().inverse();
}

Vec SphericalSimplex::cone_coordinates(const UnitVector& x) const {
    return inverse_ * x.coords();
}

bool SphericalSimplex::contains(const UnitVector& x) const {
    return cone_coordinates(x).minCoeff() >= kConeTol;
}

bool SphericalSimplex::contains(const double* x) const {
    for (int i = 0; i < dim_; ++i) {
        double c = 0.0;
        for (int j = 0; j < dim_; ++j) c += inverse_(i, j) * x[j];
        if (c < kConeTol) return false;
    }
    return true;
}

GramSignature GramSignature::of(const EuclideanSimplex& simplex) {
    const Mat& v = simplex.vertex_matrix();
    return GramSignature{v.transpose() * v};
}

double support(const EuclideanSimplex& simplex, const UnitVector& x) {
    return (simplex.vertex_matrix().transpose() * x.coords()).maxCoeff();
}

int voronoi_assign(const EuclideanSimplex& simplex, const double* x) {
    const Mat& m = simplex.vertex_matrix();
    const int d = simplex.dim();
    const int k = simplex.vertex_count();
    int best = 0;
    double best_dot = -2.0;
    for (int j = 0; j < k; ++j) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += m(i, j) * x[i];
        if (dot > best_dot) {
            best_dot = dot;
            best = j;
        }
    }
    return best;
}

int voronoi_assign(const EuclideanSimplex& simplex, const UnitVector& x) {
    return voronoi_assign(simplex, x.coords().data());
}

std::vector<UnitVector> circumcenters(const EuclideanSimplex& simplex) {
    if (!simplex.is_full_simplex())
        throw DegenerateSimplex("circumcenters require a full-dimensional simplex");
    const int d = simplex.dim();
    std::vector<UnitVector> centers;
    centers.reserve(static_cast<std::size_t>(d + 1));
    const Mat& m = simplex.vertex_matrix();
    for (int skip = 0; skip <= d; ++skip) {
        std::vector<int> face;
        for (int j = 0; j <= d; ++j)
            if (j != skip) face.push_back(j);
        const Vec p0 = m.col(face[0]);
        Mat u(d, d - 1);
        Vec rhs(d - 1);
        for (int j = 1; j < d; ++j) {
            u.col(j - 1) = m.col(face[static_cast<std::size_t>(j)]) - p0;
            rhs[j - 1] = 0.5 * u.col(j - 1).squaredNorm();
        }
        const Vec lambda = (u.transpose() * u).partialPivLu().solve(rhs);
        const Vec center = p0 + u * lambda;
        if (center.norm() < 1e-12)
            throw DegenerateFace("face circumcenter too close to the origin");
        centers.push_back(project(center));
    }
    return centers;
}

double regularity_distance(const EuclideanSimplex& simplex) {
    const Mat gram = GramSignature::of(simplex).gram;
    const int k = gram.rows();
    const double off = -1.0 / simplex.dim();
    double sum_sq = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double target = (i == j) ? 1.0 : off;
            const double delta = gram(i, j) - target;
            sum_sq += delta * delta;
        }
    return std::sqrt(sum_sq);
}

bool spherical_simplex_contains(const SphericalSimplex& ss, const UnitVector& x) {
    return ss.contains(x);
}

EuclideanSimplex regular_simplex(int d) {
    if (d < 3) throw DomainError("regular_simplex requires d >= 3");
    // Helmert basis of the hyperplane orthogonal to (1,...,1) in R^{d+1};
    // vertex i is the i-th row, rescaled to unit norm.
    const double scale = std::sqrt((d + 1.0) / d);
    std::vector<UnitVector> vertices;
    vertices.reserve(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) {
        Vec v(d);
        for (int k = 1; k <= d; ++k) {
            double h;
            if (i < k)
                h = 1.0 / std::sqrt(k * (k + 1.0));
            else if (i == k)
                h = -k / std::sqrt(k * (k + 1.0));
            else
                h = 0.0;
            v[k - 1] = scale * h;
        }
        vertices.push_back(project(v));
    }
    return EuclideanSimplex::inscribed(std::move(vertices));
}

EuclideanSimplex random_covering_simplex(int d, std::uint64_t seed) {
    if (d < 3) throw DomainError("random_covering_simplex requires d >= 3");
    for (std::uint64_t attempt = 0; attempt < 4096; ++attempt) {
        auto vertices = sample_uniform(d, d + 1, rng::derive_seed(seed, attempt));
        try {
            if (!covers_sphere(vertices)) continue;
            return EuclideanSimplex::inscribed(std::move(vertices));
        } catch (const DegenerateSimplex&) {
            continue;
        }
    }
    throw DomainError("random_covering_simplex failed to find a covering vertex set");
}

EuclideanSimplex perturbed_regular_simplex(int d, double angle, std::uint64_t seed) {
    EuclideanSimplex base = regular_simplex(d);
    std::vector<UnitVector> vertices = base.vertices();
    const Vec& v0 = vertices[0].coords();
    rng::NormalSampler gauss(rng::derive_seed(seed, 0));
    Vec tangent(d);
    for (int i = 0; i < d; ++i) tangent[i] = gauss();
    tangent -= tangent.dot(v0) * v0;
    if (tangent.norm() < 1e-12) tangent = Vec::Unit(d, 1) - v0[1] * v0;
    tangent.normalize();
    vertices[0] = project(std::cos(angle) * v0 + std::sin(angle) * tangent);
    return EuclideanSimplex::inscribed(std::move(vertices));
}

EuclideanSimplex rotate_simplex(const EuclideanSimplex& simplex, std::uint64_t seed) {
    const int d = simplex.dim();
    rng::NormalSampler gauss(rng::derive_seed(seed, 0));
    Mat raw(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) raw(i, j) = gauss();
    Eigen::HouseholderQR<Mat> qr(raw);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    if (simplex.is_full_simplex()) {
        std::vector<UnitVector> vertices;
        vertices.reserve(static_cast<std::size_t>(simplex.vertex_count()));
        for (int i = 0; i < simplex.vertex_count(); ++i)
            vertices.push_back(project(q * simplex.vertex_matrix().col(i)));
        return EuclideanSimplex::inscribed(std::move(vertices));
    }
    std::vector<Vec> points;
    points.reserve(static_cast<std::size_t>(simplex.vertex_count()));
    for (int i = 0; i < simplex.vertex_count(); ++i)
        points.push_back(q * simplex.vertex_matrix().col(i));
    return EuclideanSimplex::test_body(std::move(points));
}

}  // namespace smw
