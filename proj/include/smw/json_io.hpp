#pragma once

#include <json.hpp>

#include <string>

#include "smw/ascent.hpp"
#include "smw/meanwidth.hpp"
#include "smw/regions.hpp"

// JSON schemas shared with the CLI.
//
// Simplex files:            {"dim": d, "vertices": [[f64 x d] x (d+1)]}
// Spherical simplex files:  {"dim": d, "generators": [[f64 x d] x d]}
// Vertices are validated unit-norm within 1e-9 unless `normalize` is set.

namespace smw {

using Json = nlohmann::json;

EuclideanSimplex simplex_from_json(const Json& doc, bool normalize = false,
                                   bool test_mode = false);
Json simplex_to_json(const EuclideanSimplex& simplex);

EuclideanSimplex load_simplex(const std::string& path, bool normalize = false,
                              bool test_mode = false);
void save_simplex(const EuclideanSimplex& simplex, const std::string& path);

SphericalSimplex spherical_simplex_from_json(const Json& doc, bool normalize = false);
SphericalSimplex load_spherical_simplex(const std::string& path, bool normalize = false);

Json estimate_to_json(const MonteCarloEstimate& estimate);
Json report_to_json(const MeanWidthReport& report, int dim);
Json step_to_json(const AscentStep& step, int index, std::int64_t n, std::uint64_t seed);
Json strip_ratio_to_json(const StripRatioRecord& record, int dim);
Json sweep_to_json(const CentroidSlopeSweep& sweep, int dim);

}  // namespace smw
