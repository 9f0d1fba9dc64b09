#include "smw/json_io.hpp"

#include <cmath>
#include <fstream>

#include "smw/version.hpp"

namespace smw {

namespace {

constexpr double kFileNormTol = 1e-9;

std::vector<Vec> parse_raw_points(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains(key))
        throw InputError(std::string("expected an object with 'dim' and '") + key + "'");
    const int d = doc.at("dim").get<int>();
    if (d < 3) throw InputError("dim must be at least 3");
    std::vector<Vec> points;
    for (const auto& row : doc.at(key)) {
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw InputError("point row length does not match dim");
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = row.at(static_cast<std::size_t>(i)).get<double>();
        points.push_back(std::move(v));
    }
    if (points.empty()) throw InputError(std::string("'") + key + "' must be nonempty");
    return points;
}

std::vector<UnitVector> parse_unit_points(const Json& doc, const char* key, bool normalize) {
    std::vector<UnitVector> points;
    for (Vec& v : parse_raw_points(doc, key)) {
        if (!normalize && std::abs(v.norm() - 1.0) > kFileNormTol)
            throw InputError("point norm deviates from 1 by more than 1e-9; "
                             "pass --normalize to renormalize");
        points.push_back(project(v));
    }
    return points;
}

Json point_rows(const Mat& columns) {
    Json rows = Json::array();
    for (int j = 0; j < columns.cols(); ++j) {
        Json row = Json::array();
        for (int i = 0; i < columns.rows(); ++i) row.push_back(columns(i, j));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

EuclideanSimplex simplex_from_json(const Json& doc, bool normalize, bool test_mode) {
    if (test_mode) {
        auto points = parse_raw_points(doc, "vertices");
        if (normalize)
            for (Vec& v : points) v = project(v).coords();
        return EuclideanSimplex::test_body(std::move(points));
    }
    return EuclideanSimplex::inscribed(parse_unit_points(doc, "vertices", normalize));
}

Json simplex_to_json(const EuclideanSimplex& simplex) {
    Json doc;
    doc["dim"] = simplex.dim();
    doc["vertices"] = point_rows(simplex.vertex_matrix());
    return doc;
}

EuclideanSimplex load_simplex(const std::string& path, bool normalize, bool test_mode) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open simplex file: " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return simplex_from_json(doc, normalize, test_mode);
}

void save_simplex(const EuclideanSimplex& simplex, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write simplex file: " + path);
    out << simplex_to_json(simplex).dump(2) << "\n";
}

SphericalSimplex spherical_simplex_from_json(const Json& doc, bool normalize) {
    return SphericalSimplex(parse_unit_points(doc, "generators", normalize));
}

SphericalSimplex load_spherical_simplex(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open generator file: " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return spherical_simplex_from_json(doc, normalize);
}

Json estimate_to_json(const MonteCarloEstimate& estimate) {
    return Json{{"value", estimate.value},
                {"std_error", estimate.std_error},
                {"n_samples", estimate.n_samples},
                {"seed", estimate.seed}};
}

Json report_to_json(const MeanWidthReport& report, int dim) {
    Json doc;
    doc["total"] = estimate_to_json(report.total);
    doc["per_cell"] = Json::array();
    for (const auto& cell : report.per_cell) doc["per_cell"].push_back(estimate_to_json(cell));
    doc["cell_measures"] = report.cell_measures;
    doc["dim"] = dim;
    doc["n_samples"] = report.total.n_samples;
    doc["seed"] = report.total.seed;
    doc["version"] = kVersion;
    return doc;
}

Json step_to_json(const AscentStep& step, int index, std::int64_t n, std::uint64_t seed) {
    Json doc;
    doc["iteration"] = index;
    doc["vertices"] = point_rows(step.simplex.vertex_matrix());
    doc["mean_width"] = estimate_to_json(step.report.total);
    doc["cell_measures"] = step.report.cell_measures;
    doc["regularity_distance"] = step.regularity;
    if (step.movement)
        doc["max_vertex_movement"] = *step.movement;
    else
        doc["max_vertex_movement"] = nullptr;
    doc["dim"] = step.simplex.dim();
    doc["n_samples"] = n;
    doc["seed"] = seed;
    doc["version"] = kVersion;
    return doc;
}

Json strip_ratio_to_json(const StripRatioRecord& record, int dim) {
    Json doc;
    doc["experiment"] = "strip-ratio";
    doc["s"] = record.s;
    doc["t1"] = record.t1;
    doc["t2"] = record.t2;
    doc["integrals"] = record.integrals;
    doc["integral_std_errors"] = record.integral_std_errors;
    doc["ratios"] = record.ratios;
    doc["ratio_std_errors"] = record.ratio_std_errors;
    doc["gap"] = record.gap;
    doc["gap_std_error"] = record.gap_std_error;
    doc["verdict"] = to_string(record.verdict);
    doc["dim"] = dim;
    doc["n_samples"] = record.n;
    doc["seed"] = record.seed;
    doc["version"] = kVersion;
    return doc;
}

Json sweep_to_json(const CentroidSlopeSweep& sweep, int dim) {
    Json doc;
    doc["experiment"] = "centroid-uniqueness";
    doc["s_values"] = sweep.s_values;
    doc["slopes"] = sweep.slopes;
    doc["slope_std_errors"] = sweep.slope_std_errors;
    doc["acceptance_rates"] = sweep.acceptance_rates;
    doc["verdict"] = to_string(sweep.verdict);
    doc["dim"] = dim;
    doc["n_samples"] = sweep.n;
    doc["seed"] = sweep.seed;
    doc["version"] = kVersion;
    return doc;
}

}  // namespace smw
