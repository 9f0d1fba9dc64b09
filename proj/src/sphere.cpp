#include "smw/sphere.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace smw {

UnitVector::UnitVector(Vec v) : v_(std::move(v)) {
    if (v_.size() < 3) throw DomainError("UnitVector requires dimension >= 3");
    if (std::abs(v_.norm() - 1.0) > kUnitNormTol)
        throw DomainError("UnitVector norm deviates from 1 by more than 1e-12");
}

double UnitVector::angle_to(const UnitVector& other) const {
    return std::acos(std::clamp(dot(other), -1.0, 1.0));
}

UnitVector project(const Vec& x) {
    const double norm = x.norm();
    if (norm < 1e-300) throw ZeroVector("cannot project a zero vector onto the sphere");
    return UnitVector(x / norm);
}

std::vector<UnitVector> sample_uniform(int d, std::int64_t n, std::uint64_t seed) {
    if (d < 3) throw DomainError("sample_uniform requires d >= 3");
    if (n < 1) throw DomainError("sample_uniform requires n >= 1");
    std::vector<UnitVector> points;
    points.reserve(static_cast<std::size_t>(n));
    RowMat buffer;
    const std::int64_t chunks = mc::chunk_count(n);
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t rows = std::min<std::int64_t>(mc::kChunkSize, n - c * mc::kChunkSize);
        mc::fill_sphere_chunk(d, seed, c, rows, buffer);
        for (std::int64_t i = 0; i < rows; ++i)
            points.emplace_back(UnitVector(buffer.row(i).transpose()));
    }
    return points;
}

namespace {

// Smallest ball with all `support` points on its boundary: the circumsphere
// restricted to the affine hull of the support set.
bool circumsphere_of_subset(const std::vector<Vec>& points, const std::vector<int>& support,
                            Ball& out) {
    const int k = static_cast<int>(support.size());
    const Vec& p0 = points[static_cast<std::size_t>(support[0])];
    if (k == 1) {
        out.center = p0;
        out.radius = 0.0;
        return true;
    }
    const int d = static_cast<int>(p0.size());
    Mat u(d, k - 1);
    Vec rhs(k - 1);
    for (int j = 1; j < k; ++j) {
        u.col(j - 1) = points[static_cast<std::size_t>(support[j])] - p0;
        rhs[j - 1] = 0.5 * u.col(j - 1).squaredNorm();
    }
    const Mat gram = u.transpose() * u;
    Eigen::FullPivLU<Mat> lu(gram);
    if (!lu.isInvertible()) return false;
    const Vec lambda = lu.solve(rhs);
    out.center = p0 + u * lambda;
    out.radius = (out.center - p0).norm();
    return true;
}

bool contains_all(const std::vector<Vec>& points, const Ball& ball, double tol) {
    for (const Vec& p : points)
        if ((p - ball.center).norm() > ball.radius + tol) return false;
    return true;
}

void enumerate_subsets(const std::vector<Vec>& points, int max_size, std::vector<int>& subset,
                       int start, Ball& best, bool& found) {
    if (!subset.empty()) {
        Ball candidate;
        if (circumsphere_of_subset(points, subset, candidate) &&
            contains_all(points, candidate, 1e-9) &&
            (!found || candidate.radius < best.radius)) {
            best = candidate;
            found = true;
        }
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (int i = start; i < static_cast<int>(points.size()); ++i) {
        subset.push_back(i);
        enumerate_subsets(points, max_size, subset, i + 1, best, found);
        subset.pop_back();
    }
}

}  // namespace

Ball min_enclosing_ball(const std::vector<Vec>& points) {
    if (points.empty()) throw DomainError("min_enclosing_ball requires a nonempty point set");
    const int d = static_cast<int>(points.front().size());
    for (const Vec& p : points)
        if (static_cast<int>(p.size()) != d)
            throw DomainError("min_enclosing_ball points must share one dimension");
    Ball best;
    bool found = false;
    std::vector<int> subset;
    enumerate_subsets(points, d + 1, subset, 0, best, found);
    if (!found) throw DomainError("min_enclosing_ball found no valid support subset");
    return best;
}

bool covers_sphere(const std::vector<UnitVector>& vertices) {
    if (vertices.empty()) throw DomainError("covers_sphere requires vertices");
    const int d = vertices.front().dim();
    if (static_cast<int>(vertices.size()) != d + 1)
        throw DomainError("covers_sphere requires exactly d+1 vertices");

    Mat edges(d, d);
    for (int j = 1; j <= d; ++j)
        edges.col(j - 1) = vertices[static_cast<std::size_t>(j)].coords() - vertices[0].coords();
    Eigen::JacobiSVD<Mat> svd(edges);
    if (svd.singularValues()[d - 1] < kAffineTol)
        throw DegenerateSimplex("vertices are affinely dependent");

    // Barycentric coordinates of the origin.
    Mat system(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) {
        system.block(0, j, d, 1) = vertices[static_cast<std::size_t>(j)].coords();
        system(d, j) = 1.0;
    }
    Vec rhs = Vec::Zero(d + 1);
    rhs[d] = 1.0;
    const Vec bary = system.partialPivLu().solve(rhs);
    return bary.minCoeff() >= kConeTol;
}

}  // namespace smw
