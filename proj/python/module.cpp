// Python bindings for the main operations: sphere primitives, simplex
// geometry, mean-width estimators, the shear map, the inequality tools, and
// the centroid-ascent optimizer.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smw/ascent.hpp"
#include "smw/inequalities.hpp"
#include "smw/json_io.hpp"
#include "smw/version.hpp"

namespace py = pybind11;
using namespace smw;

namespace {

UnitVector to_unit(const Vec& x) { return UnitVector(x); }

Mat units_to_matrix(const std::vector<UnitVector>& points) {
    if (points.empty()) return Mat();
    Mat m(points.size(), points.front().dim());
    for (std::size_t i = 0; i < points.size(); ++i)
        m.row(static_cast<int>(i)) = points[i].coords().transpose();
    return m;
}

EuclideanSimplex simplex_from_rows(const Mat& rows, bool test_mode) {
    if (test_mode) {
        std::vector<Vec> points;
        for (int i = 0; i < rows.rows(); ++i) points.push_back(rows.row(i).transpose());
        return EuclideanSimplex::test_body(std::move(points));
    }
    std::vector<UnitVector> points;
    for (int i = 0; i < rows.rows(); ++i)
        points.push_back(UnitVector(rows.row(i).transpose()));
    return EuclideanSimplex::inscribed(std::move(points));
}

SphericalSimplex cone_from_rows(const Mat& rows) {
    std::vector<UnitVector> gens;
    for (int i = 0; i < rows.rows(); ++i) gens.push_back(UnitVector(rows.row(i).transpose()));
    return SphericalSimplex(std::move(gens));
}

py::dict estimate_dict(const MonteCarloEstimate& est) {
    py::dict d;
    d["value"] = est.value;
    d["std_error"] = est.std_error;
    d["n_samples"] = est.n_samples;
    d["seed"] = est.seed;
    return d;
}

py::dict report_dict(const MeanWidthReport& report) {
    py::dict d;
    d["total"] = estimate_dict(report.total);
    py::list cells;
    for (const auto& cell : report.per_cell) cells.append(estimate_dict(cell));
    d["per_cell"] = cells;
    d["cell_measures"] = report.cell_measures;
    return d;
}

// The sampling loops run with the GIL released and may call the predicate
// from worker threads, so every callback re-acquires it.
Region region_from_callable(int dim, const std::function<bool(Vec)>& predicate,
                            bool hemisphere_safe) {
    Region r;
    r.dim = dim;
    r.label = "python-predicate";
    r.hemisphere_safe = hemisphere_safe;
    r.contains = [dim, predicate](const double* x) {
        py::gil_scoped_acquire acquire;
        return predicate(Eigen::Map<const Vec>(x, dim));
    };
    return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "mean width of simplexes inscribed in the unit ball";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "Error");

    m.def("project", [](const Vec& x) { return project(x).coords(); },
          py::arg("x"), "Radial projection onto the unit sphere.");

    m.def(
        "sample_uniform",
        [](int d, std::int64_t n, std::uint64_t seed) {
            return units_to_matrix(sample_uniform(d, n, seed));
        },
        py::arg("d"), py::arg("n"), py::arg("seed"),
        "n uniform points on S^{d-1} as rows, deterministic given the seed.");

    m.def(
        "min_enclosing_ball",
        [](const std::vector<Vec>& points) {
            const Ball ball = min_enclosing_ball(points);
            return py::make_tuple(ball.center, ball.radius);
        },
        py::arg("points"), "Smallest enclosing ball as (center, radius).");

    m.def(
        "covers_sphere",
        [](const Mat& rows) {
            std::vector<UnitVector> vertices;
            for (int i = 0; i < rows.rows(); ++i)
                vertices.push_back(to_unit(rows.row(i).transpose()));
            return covers_sphere(vertices);
        },
        py::arg("vertices"), "Whether the vertex hemispheres cover the sphere.");

    m.def(
        "regular_simplex",
        [](int d) { return regular_simplex(d).vertex_matrix().transpose().eval(); },
        py::arg("d"), "Vertices of the inscribed regular simplex as rows.");
    m.def(
        "random_covering_simplex",
        [](int d, std::uint64_t seed) {
            return random_covering_simplex(d, seed).vertex_matrix().transpose().eval();
        },
        py::arg("d"), py::arg("seed"));
    m.def(
        "perturbed_regular_simplex",
        [](int d, double angle, std::uint64_t seed) {
            return perturbed_regular_simplex(d, angle, seed).vertex_matrix().transpose().eval();
        },
        py::arg("d"), py::arg("angle"), py::arg("seed"));

    m.def(
        "support",
        [](const Mat& vertices, const Vec& x, bool test_mode) {
            return support(simplex_from_rows(vertices, test_mode), to_unit(x));
        },
        py::arg("vertices"), py::arg("x"), py::arg("test_mode") = false);
    m.def(
        "voronoi_assign",
        [](const Mat& vertices, const Vec& x, bool test_mode) {
            return voronoi_assign(simplex_from_rows(vertices, test_mode), to_unit(x));
        },
        py::arg("vertices"), py::arg("x"), py::arg("test_mode") = false);
    m.def(
        "circumcenters",
        [](const Mat& vertices) {
            return units_to_matrix(circumcenters(simplex_from_rows(vertices, false)));
        },
        py::arg("vertices"));
    m.def(
        "regularity_distance",
        [](const Mat& vertices) {
            return regularity_distance(simplex_from_rows(vertices, false));
        },
        py::arg("vertices"));

    m.def(
        "mean_width_mc",
        [](const Mat& vertices, std::int64_t n, std::uint64_t seed, bool test_mode) {
            return estimate_dict(mean_width_mc(simplex_from_rows(vertices, test_mode), n, seed));
        },
        py::arg("vertices"), py::arg("n"), py::arg("seed"), py::arg("test_mode") = false);
    m.def(
        "mean_width_cells",
        [](const Mat& vertices, std::int64_t n, std::uint64_t seed, bool test_mode) {
            return report_dict(mean_width_cells(simplex_from_rows(vertices, test_mode), n, seed));
        },
        py::arg("vertices"), py::arg("n"), py::arg("seed"), py::arg("test_mode") = false);

    m.def(
        "shear_apply",
        [](double s, const Vec& x) {
            return ShearMap(s, static_cast<int>(x.size())).apply(to_unit(x)).coords();
        },
        py::arg("s"), py::arg("x"));
    m.def(
        "shear_jacobian",
        [](double s, const Vec& x) {
            return ShearMap(s, static_cast<int>(x.size())).jacobian(to_unit(x));
        },
        py::arg("s"), py::arg("x"));
    m.def(
        "pushforward_density",
        [](double s, const Vec& x) {
            return ShearMap(s, static_cast<int>(x.size())).pushforward_density(to_unit(x));
        },
        py::arg("s"), py::arg("x"));
    m.def(
        "map_pole",
        [](double s, const Vec& pole) {
            return ShearMap(s, static_cast<int>(pole.size())).map_pole(to_unit(pole)).coords();
        },
        py::arg("s"), py::arg("pole"));

    m.def(
        "centroid",
        [](int dim, const std::function<bool(Vec)>& predicate, std::int64_t n,
           std::uint64_t seed, bool hemisphere_safe) {
            // the region wrapping the Python callable is built and destroyed
            // with the GIL held; only the sampling runs without it
            const Region region = region_from_callable(dim, predicate, hemisphere_safe);
            const CentroidEstimate est = [&] {
                py::gil_scoped_release release;
                return centroid(region, n, seed);
            }();
            py::dict d;
            d["direction"] = est.direction.coords();
            d["resultant_norm"] = est.resultant_norm;
            d["angular_std_error"] = est.angular_std_error;
            d["measure"] = estimate_dict(est.measure);
            d["accepted"] = est.accepted;
            return d;
        },
        py::arg("dim"), py::arg("predicate"), py::arg("n"), py::arg("seed"),
        py::arg("hemisphere_safe") = false,
        "Spherical centroid of {x : predicate(x)} by rejection sampling.");

    m.def(
        "strip_integral",
        [](int dim, const std::function<bool(Vec)>& predicate, double t_lo, double t_hi,
           int coordinate, std::int64_t n, std::uint64_t seed) {
            const Region region = region_from_callable(dim, predicate, true);
            const MonteCarloEstimate est = [&] {
                py::gil_scoped_release release;
                return strip_integral(region, StripInterval(t_lo, t_hi), coordinate, n, seed);
            }();
            return estimate_dict(est);
        },
        py::arg("dim"), py::arg("predicate"), py::arg("t_lo"), py::arg("t_hi"),
        py::arg("coordinate"), py::arg("n"), py::arg("seed"));

    m.def(
        "strip_ratio_experiment",
        [](const Mat& generators, double s, double t1, double t2, std::int64_t n,
           std::uint64_t seed, bool test_mode) {
            const auto rec =
                strip_ratio_experiment(cone_from_rows(generators), s, t1, t2, n, seed, test_mode);
            py::dict d;
            d["integrals"] = rec.integrals;
            d["integral_std_errors"] = rec.integral_std_errors;
            d["ratios"] = rec.ratios;
            d["ratio_std_errors"] = rec.ratio_std_errors;
            d["gap"] = rec.gap;
            d["gap_std_error"] = rec.gap_std_error;
            d["verdict"] = to_string(rec.verdict);
            return d;
        },
        py::arg("generators"), py::arg("s"), py::arg("t1"), py::arg("t2"), py::arg("n"),
        py::arg("seed"), py::arg("test_mode") = false);

    m.def(
        "centroid_uniqueness_experiment",
        [](const Mat& generators, const std::vector<double>& s_values, std::int64_t n,
           std::uint64_t seed) {
            const auto sweep =
                centroid_uniqueness_experiment(cone_from_rows(generators), s_values, n, seed);
            py::dict d;
            d["s_values"] = sweep.s_values;
            d["slopes"] = sweep.slopes;
            d["slope_std_errors"] = sweep.slope_std_errors;
            d["acceptance_rates"] = sweep.acceptance_rates;
            d["verdict"] = to_string(sweep.verdict);
            return d;
        },
        py::arg("generators"), py::arg("s_values"), py::arg("n"), py::arg("seed"));

    m.def(
        "simpson_antidote",
        [](const std::array<double, 2>& a, const std::array<double, 2>& b,
           const std::array<double, 2>& alpha, const std::array<double, 2>& beta,
           bool reversed) {
            const EightTuple t{a, b, alpha, beta};
            const auto r = reversed ? reversed_simpson_antidote(t) : simpson_antidote(t);
            return py::make_tuple(r.hypothesis_holds, r.conclusion_holds, r.identity_residual);
        },
        py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"),
        py::arg("reversed") = false,
        "(hypothesis_holds, conclusion_holds, identity_residual).");

    m.def("pl_constant", &pl_constant, py::arg("theta"), py::arg("d"));
    m.def("sinc", &sinc, py::arg("theta"));
    m.def(
        "geodesic_combine",
        [](const Vec& q1, const Vec& q3, double lambda) {
            return geodesic_combine(to_unit(q1), to_unit(q3), lambda).coords();
        },
        py::arg("q1"), py::arg("q3"), py::arg("lambda_"));

    m.def(
        "spl_verify_circle",
        [](const std::vector<double>& f, const std::vector<double>& g, double lambda,
           double slack) {
            const auto result =
                spl_verify(SphereFunction::circle(f), SphereFunction::circle(g), lambda, slack);
            py::dict d;
            d["lhs"] = result.lhs;
            d["rhs"] = result.rhs;
            d["holds"] = result.holds;
            d["empty_support"] = result.empty_support;
            return d;
        },
        py::arg("f"), py::arg("g"), py::arg("lambda_"), py::arg("slack"));

    m.def(
        "lloyd_step",
        [](const Mat& vertices, std::int64_t n, std::uint64_t seed) {
            return lloyd_step(simplex_from_rows(vertices, false), n, seed)
                .vertex_matrix()
                .transpose()
                .eval();
        },
        py::arg("vertices"), py::arg("n"), py::arg("seed"));

    m.def(
        "ascend",
        [](const Mat& vertices, double tol, int max_iters, std::int64_t n, std::uint64_t seed) {
            const auto trajectory =
                ascend(simplex_from_rows(vertices, false), tol, max_iters, n, seed);
            py::list steps;
            for (const auto& step : trajectory.steps) {
                py::dict d;
                d["vertices"] = step.simplex.vertex_matrix().transpose().eval();
                d["mean_width"] = estimate_dict(step.report.total);
                d["regularity_distance"] = step.regularity;
                d["max_vertex_movement"] =
                    step.movement ? py::cast(*step.movement) : py::none();
                steps.append(d);
            }
            py::dict out;
            out["steps"] = steps;
            out["converged"] = trajectory.converged;
            out["iterations"] = trajectory.iterations;
            return out;
        },
        py::arg("vertices"), py::arg("tol"), py::arg("max_iters"), py::arg("n"),
        py::arg("seed"));

    m.def(
        "check_necessary_conditions",
        [](const std::vector<Vec>& vertices) {
            const auto report = check_necessary_conditions(vertices);
            return py::make_tuple(report.smallest_ball_is_unit, report.unit_vertices,
                                  report.hemispheres_cover);
        },
        py::arg("vertices"),
        "(smallest_ball_is_unit, unit_vertices, hemispheres_cover).");
}
