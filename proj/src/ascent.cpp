#include "smw/ascent.hpp"

#include <algorithm>
#include <cmath>

namespace smw {

namespace {

struct CellResultants {
    Mat sums;  // d x (d+1), column i = sum of samples assigned to cell i
    std::vector<std::int64_t> counts;
};

CellResultants accumulate_cell_resultants(const EuclideanSimplex& simplex, std::int64_t n,
                                          std::uint64_t seed) {
    const int d = simplex.dim();
    const int k = simplex.vertex_count();
    auto partials = mc::map_sample_chunks<CellResultants>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            CellResultants acc;
            acc.sums = Mat::Zero(d, k);
            acc.counts.assign(static_cast<std::size_t>(k), 0);
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                const int cell = voronoi_assign(simplex, x);
                for (int a = 0; a < d; ++a) acc.sums(a, cell) += x[a];
                acc.counts[static_cast<std::size_t>(cell)] += 1;
            }
            return acc;
        });

    CellResultants total;
    total.sums = Mat::Zero(d, k);
    total.counts.assign(static_cast<std::size_t>(k), 0);
    std::vector<KahanSum> sums(static_cast<std::size_t>(d * k));
    for (const auto& p : partials) {
        for (int j = 0; j < k; ++j) {
            for (int a = 0; a < d; ++a)
                sums[static_cast<std::size_t>(j * d + a)].add(p.sums(a, j));
            total.counts[static_cast<std::size_t>(j)] += p.counts[static_cast<std::size_t>(j)];
        }
    }
    for (int j = 0; j < k; ++j)
        for (int a = 0; a < d; ++a)
            total.sums(a, j) = sums[static_cast<std::size_t>(j * d + a)].value();
    return total;
}

}  // namespace

EuclideanSimplex lloyd_step(const EuclideanSimplex& simplex, std::int64_t n, std::uint64_t seed) {
    if (!simplex.is_full_simplex()) throw DomainError("lloyd_step requires a full simplex");
    if (!covers_sphere(simplex.vertices()))
        throw DomainError("lloyd_step requires the vertex hemispheres to cover the sphere");
    const int k = simplex.vertex_count();
    const auto acc = accumulate_cell_resultants(simplex, n, seed);
    std::vector<UnitVector> next;
    next.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        if (acc.counts[static_cast<std::size_t>(j)] < kEmptyCellMin)
            throw EmptyCell("cell " + std::to_string(j) + " received fewer than 10 samples");
        const Vec resultant = acc.sums.col(j) / static_cast<double>(n);
        if (resultant.norm() < kResultantTol)
            throw UndefinedCentroid("cell resultant norm below 1e-6");
        next.push_back(project(resultant));
    }
    return EuclideanSimplex::inscribed(std::move(next));
}

AscentTrajectory ascend(const EuclideanSimplex& simplex, double tol, int max_iters,
                        std::int64_t n, std::uint64_t seed) {
    if (!(tol > 0.0)) throw DomainError("ascend requires tol > 0");
    if (max_iters < 1) throw DomainError("ascend requires max_iters >= 1");

    AscentTrajectory trajectory;
    EuclideanSimplex current = simplex;
    // stream 2k drives the centroid step of iteration k, stream 2k+1 its report
    auto report_of = [&](const EuclideanSimplex& s, int iteration) {
        return mean_width_cells(s, n,
                                rng::derive_seed(seed, 2 * static_cast<std::uint64_t>(iteration) + 1));
    };
    trajectory.steps.push_back(
        AscentStep{current, report_of(current, 0), regularity_distance(current), std::nullopt});

    for (int iteration = 0; iteration < max_iters; ++iteration) {
        EuclideanSimplex next =
            lloyd_step(current, n, rng::derive_seed(seed, 2 * static_cast<std::uint64_t>(iteration)));
        double movement = 0.0;
        for (int j = 0; j < current.vertex_count(); ++j)
            movement = std::max(movement, current.vertex(j).angle_to(next.vertex(j)));
        trajectory.steps.push_back(AscentStep{next, report_of(next, iteration + 1),
                                              regularity_distance(next), movement});
        trajectory.iterations = iteration + 1;
        current = std::move(next);
        if (movement < tol) {
            trajectory.converged = true;
            break;
        }
    }
    return trajectory;
}

SwitchCheck verify_switch_region(
    const EuclideanSimplex& simplex,
    const std::function<int(const double*, std::int64_t)>& partition_assignment, std::int64_t n,
    std::uint64_t seed) {
    const Mat& m = simplex.vertex_matrix();
    const int d = simplex.dim();
    const int k = simplex.vertex_count();

    struct Partial {
        double lhs = 0.0;
        double rhs = 0.0;
    };
    auto partials = mc::map_sample_chunks<Partial>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t chunk) {
            Partial p;
            const std::int64_t base = chunk * mc::kChunkSize;
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                const int assigned = partition_assignment(x, base + i);
                if (assigned < 0 || assigned >= k)
                    throw DomainError("partition_assignment index out of range");
                double chosen = 0.0;
                for (int a = 0; a < d; ++a) chosen += m(a, assigned) * x[a];
                const int cell = voronoi_assign(simplex, x);
                double best = 0.0;
                for (int a = 0; a < d; ++a) best += m(a, cell) * x[a];
                p.lhs += chosen;
                p.rhs += best;
            }
            return p;
        });

    KahanSum lhs, rhs;
    for (const auto& p : partials) {
        lhs.add(p.lhs);
        rhs.add(p.rhs);
    }
    SwitchCheck check;
    check.lhs = lhs.value() / static_cast<double>(n);
    check.rhs = rhs.value() / static_cast<double>(n);
    check.holds = check.lhs <= check.rhs + 1e-12;
    return check;
}

SwitchCheck verify_switch_point(const Region& region, const UnitVector& x, std::int64_t n,
                                std::uint64_t seed) {
    if (region.dim != x.dim()) throw DomainError("region/point dimension mismatch");
    const int d = region.dim;

    auto partials = mc::map_sample_chunks<Vec>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            Vec sum = Vec::Zero(d);
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* p = pts.row(i).data();
                if (!region.contains(p)) continue;
                for (int a = 0; a < d; ++a) sum[a] += p[a];
            }
            return sum;
        });

    std::vector<KahanSum> sums(static_cast<std::size_t>(d));
    for (const auto& p : partials)
        for (int a = 0; a < d; ++a) sums[static_cast<std::size_t>(a)].add(p[a]);
    Vec resultant(d);
    for (int a = 0; a < d; ++a) resultant[a] = sums[static_cast<std::size_t>(a)].value();
    const double inv_n = 1.0 / static_cast<double>(n);
    if (resultant.norm() * inv_n < kResultantTol)
        throw UndefinedCentroid("resultant norm below 1e-6 in verify_switch_point");

    const UnitVector centroid_dir = project(resultant);
    SwitchCheck check;
    check.lhs = resultant.dot(x.coords()) * inv_n;
    check.rhs = resultant.dot(centroid_dir.coords()) * inv_n;
    check.holds = check.lhs <= check.rhs + 1e-12;
    return check;
}

NecessaryConditions check_necessary_conditions(const std::vector<Vec>& vertices) {
    NecessaryConditions report;
    const Ball ball = min_enclosing_ball(vertices);
    report.smallest_ball_is_unit =
        ball.center.norm() <= 1e-6 && std::abs(ball.radius - 1.0) <= 1e-6;

    report.unit_vertices = true;
    for (const Vec& p : vertices)
        if (std::abs(p.norm() - 1.0) > 1e-6) report.unit_vertices = false;

    // covering depends only on vertex directions
    try {
        std::vector<UnitVector> directions;
        directions.reserve(vertices.size());
        for (const Vec& p : vertices) directions.push_back(project(p));
        report.hemispheres_cover = covers_sphere(directions);
    } catch (const Error&) {
        report.hemispheres_cover = false;
    }
    return report;
}

NecessaryConditions check_necessary_conditions(const EuclideanSimplex& simplex) {
    std::vector<Vec> points;
    points.reserve(static_cast<std::size_t>(simplex.vertex_count()));
    for (int i = 0; i < simplex.vertex_count(); ++i)
        points.push_back(simplex.vertex_matrix().col(i));
    return check_necessary_conditions(points);
}

}  // namespace smw
