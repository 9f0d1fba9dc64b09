// smw: mean width of inscribed simplexes - estimators, centroid ascent,
// property suites, and the shear-strip experiments, with reproducible
// machine-readable output.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "smw/ascent.hpp"
#include "smw/inequalities.hpp"
#include "smw/json_io.hpp"
#include "smw/version.hpp"

namespace {

using namespace smw;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitNonConvergence = 4;
constexpr int kExitViolation = 5;

struct RunConfig {
    int dim = 3;
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
    double tol = 1e-3;
    int max_iters = 500;
    std::string output_format = "json";
    std::string input_path;
    bool normalize = false;
    bool test_mode = false;
};

void add_common_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--dim", config.dim, "ambient dimension d")->check(CLI::Range(3, 64));
    cmd->add_option("--samples", config.samples, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "RNG seed");
    cmd->add_option("--output", config.output_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--input", config.input_path, "input file path");
    cmd->add_flag("--normalize", config.normalize, "renormalize input vertices");
    cmd->add_flag("--test-mode", config.test_mode, "relax validation for degenerate bodies");
}

// The reference configurations used by the recorded experiment runs.
SphericalSimplex reference_triangle() {
    std::vector<UnitVector> generators;
    generators.push_back(project((Vec(3) << 1.0, -0.05, 0.2).finished()));
    generators.push_back(project((Vec(3) << 1.0, 0.30, 0.1).finished()));
    generators.push_back(project((Vec(3) << 1.0, 0.10, -0.25).finished()));
    return SphericalSimplex(generators);
}

SphericalSimplex reference_simplex4() {
    std::vector<UnitVector> generators;
    generators.push_back(project((Vec(4) << 0.0, 1.0, 0.2, 0.1).finished()));
    generators.push_back(project((Vec(4) << 0.0, -0.2, 1.0, 0.3).finished()));
    generators.push_back(project((Vec(4) << 0.0, 0.1, -0.3, 1.0).finished()));
    generators.push_back(project((Vec(4) << 1.0, 0.2, 0.3, -0.2).finished()));
    return SphericalSimplex(generators);
}

int cmd_meanwidth(const RunConfig& config) {
    const auto simplex = load_simplex(config.input_path, config.normalize, config.test_mode);
    const auto report = mean_width_cells(simplex, config.samples, config.seed);
    if (config.output_format == "csv") {
        // fixed column order: row,index,value,std_error,measure,n_samples,seed,dim,version
        std::cout << "row,index,value,std_error,measure,n_samples,seed,dim,version\n";
        std::cout << "total,," << report.total.value << "," << report.total.std_error << ",,"
                  << report.total.n_samples << "," << report.total.seed << "," << simplex.dim()
                  << "," << kVersion << "\n";
        for (std::size_t i = 0; i < report.per_cell.size(); ++i)
            std::cout << "cell," << i << "," << report.per_cell[i].value << ","
                      << report.per_cell[i].std_error << "," << report.cell_measures[i] << ","
                      << report.total.n_samples << "," << report.total.seed << ","
                      << simplex.dim() << "," << kVersion << "\n";
    } else {
        std::cout << report_to_json(report, simplex.dim()).dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_ascend(const RunConfig& config) {
    const auto simplex = load_simplex(config.input_path, config.normalize, config.test_mode);
    const auto conditions = check_necessary_conditions(simplex);
    if (!conditions.hemispheres_cover) {
        std::cerr << "error: vertex hemispheres do not cover the sphere; "
                     "no mean-width maximizer can look like this input\n";
        return kExitInvariant;
    }
    const auto trajectory =
        ascend(simplex, config.tol, config.max_iters, config.samples, config.seed);
    if (config.output_format == "csv") {
        std::cout << "iteration,mean_width,std_error,regularity_distance,max_vertex_movement,"
                     "n_samples,seed,dim,version\n";
        for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
            const auto& step = trajectory.steps[i];
            std::cout << i << "," << step.report.total.value << ","
                      << step.report.total.std_error << "," << step.regularity << ",";
            if (step.movement) std::cout << *step.movement;
            std::cout << "," << config.samples << "," << config.seed << "," << simplex.dim()
                      << "," << kVersion << "\n";
        }
    } else {
        for (std::size_t i = 0; i < trajectory.steps.size(); ++i)
            std::cout << step_to_json(trajectory.steps[i], static_cast<int>(i), config.samples,
                                      config.seed)
                             .dump()
                      << "\n";
        Json summary;
        summary["converged"] = trajectory.converged;
        summary["iterations"] = trajectory.iterations;
        summary["non_convergence"] = !trajectory.converged;
        summary["dim"] = simplex.dim();
        summary["n_samples"] = config.samples;
        summary["seed"] = config.seed;
        summary["version"] = kVersion;
        std::cout << summary.dump() << "\n";
    }
    return trajectory.converged ? kExitOk : kExitNonConvergence;
}

int suite_shear(const RunConfig& config, std::ostream& out) {
    const int trials = static_cast<int>(std::min<std::int64_t>(config.samples, 10000));
    int violations = 0;
    auto record_violation = [&](const std::string& what, double magnitude) {
        ++violations;
        Json doc{{"violation", what}, {"magnitude", magnitude}};
        out << doc.dump() << "\n";
    };

    for (int trial = 0; trial < trials; ++trial) {
        const int d = 3 + trial % 3;
        rng::Xoshiro256pp gen(rng::derive_seed(config.seed, static_cast<std::uint64_t>(trial)));
        const double s = -2.0 + 4.0 * gen.uniform();
        const double t = -2.0 + 4.0 * gen.uniform();
        rng::NormalSampler gauss(rng::derive_seed(config.seed, 100000 + trial));
        Vec raw(d);
        for (int i = 0; i < d; ++i) raw[i] = gauss();
        const UnitVector x = project(raw);
        const ShearMap fs(s, d), ft(t, d), fsum(s + t, d);

        const double group =
            (fsum.apply(x).coords() - fs.apply(ft.apply(x)).coords()).norm();
        if (group > 1e-12) record_violation("group-law", group);
        const double inverse = (ShearMap(-s, d).apply(fs.apply(x)).coords() - x.coords()).norm();
        if (inverse > 1e-12) record_violation("inverse", inverse);
        const double chain = std::abs(fs.jacobian(x) * fs.inverse().jacobian(fs.apply(x)) - 1.0);
        if (chain > 1e-10) record_violation("jacobian-chain", chain);

        Vec tangent(d);
        for (int i = 0; i < d; ++i) tangent[i] = gauss();
        tangent -= tangent.dot(x.coords()) * x.coords();
        if (tangent.norm() > 1e-12) {
            const UnitVector pole = x;
            const UnitVector on_sphere = project(tangent);
            const double dot = std::abs(fs.apply(on_sphere).dot(fs.map_pole(pole)));
            if (dot > 1e-12) record_violation("pole-transport", dot);
        }
    }

    out << "shear trials: " << trials << " (group law, inverse, jacobian chain, pole)\n";
    return violations;
}

int suite_lemma(const RunConfig& config, std::ostream& out) {
    std::vector<EightTuple> tuples;
    if (!config.input_path.empty()) {
        std::ifstream in(config.input_path);
        if (!in) throw InputError("cannot open tuple file: " + config.input_path);
        Json doc;
        try {
            in >> doc;
        } catch (const Json::exception& e) {
            throw InputError(std::string("malformed JSON: ") + e.what());
        }
        for (const auto& item : doc) {
            EightTuple t{};
            for (int i = 0; i < 2; ++i) {
                t.a[static_cast<std::size_t>(i)] = item.at("a").at(i).get<double>();
                t.b[static_cast<std::size_t>(i)] = item.at("b").at(i).get<double>();
                t.alpha[static_cast<std::size_t>(i)] = item.at("alpha").at(i).get<double>();
                t.beta[static_cast<std::size_t>(i)] = item.at("beta").at(i).get<double>();
            }
            tuples.push_back(t);
        }
    } else {
        const std::int64_t count = config.samples;
        for (std::int64_t i = 0; i < count; ++i) {
            rng::Xoshiro256pp gen(rng::derive_seed(config.seed, static_cast<std::uint64_t>(i)));
            auto value = [&] { return -10.0 + 20.0 * gen.uniform(); };
            auto weight = [&] { return 0.05 + 10.0 * gen.uniform(); };
            tuples.push_back(EightTuple{{value(), value()},
                                        {value(), value()},
                                        {weight(), weight()},
                                        {weight(), weight()}});
        }
    }

    int violations = 0;
    for (const auto& tuple : tuples) {
        for (const bool reversed : {false, true}) {
            const auto result =
                reversed ? reversed_simpson_antidote(tuple) : simpson_antidote(tuple);
            const bool identity_ok = result.identity_residual < 1e-12;
            const bool sound = !result.hypothesis_holds || result.conclusion_holds;
            if (!identity_ok || !sound) {
                ++violations;
                Json doc{{"violation", reversed ? "lemma-reversed" : "lemma"},
                         {"a", tuple.a},
                         {"b", tuple.b},
                         {"alpha", tuple.alpha},
                         {"beta", tuple.beta},
                         {"identity_residual", result.identity_residual}};
                out << doc.dump() << "\n";
            }
        }
    }
    out << "lemma tuples: " << tuples.size() << " (identity + soundness, both variants)\n";
    return violations;
}

int suite_spl(const RunConfig& config, std::ostream& out) {
    const int trials = static_cast<int>(std::min<std::int64_t>(config.samples, 100000));
    const int nodes = 2048;
    int violations = 0;
    for (int trial = 0; trial < trials; ++trial) {
        SphereFunction f = [&] {
            if (!config.input_path.empty() && trial == 0)
                return load_circle_csv(config.input_path, 1);
            std::vector<double> values(nodes);
            rng::Xoshiro256pp gen(rng::derive_seed(config.seed, 2 * trial));
            double a1 = -1.0 + 2.0 * gen.uniform(), b1 = -1.0 + 2.0 * gen.uniform();
            double a2 = -1.0 + 2.0 * gen.uniform(), b2 = -1.0 + 2.0 * gen.uniform();
            for (int i = 0; i < nodes; ++i) {
                const double angle = 2.0 * 3.14159265358979323846 * i / nodes;
                values[static_cast<std::size_t>(i)] =
                    std::exp(a1 * std::cos(angle) + b1 * std::sin(angle) +
                             0.5 * (a2 * std::cos(2 * angle) + b2 * std::sin(2 * angle)));
            }
            return SphereFunction::circle(std::move(values));
        }();
        SphereFunction g = [&] {
            if (!config.input_path.empty() && trial == 0)
                return load_circle_csv(config.input_path, 2);
            std::vector<double> values(nodes);
            rng::Xoshiro256pp gen(rng::derive_seed(config.seed, 2 * trial + 1));
            double a1 = -1.0 + 2.0 * gen.uniform(), b1 = -1.0 + 2.0 * gen.uniform();
            double a2 = -1.0 + 2.0 * gen.uniform(), b2 = -1.0 + 2.0 * gen.uniform();
            for (int i = 0; i < nodes; ++i) {
                const double angle = 2.0 * 3.14159265358979323846 * i / nodes;
                values[static_cast<std::size_t>(i)] =
                    std::exp(a1 * std::cos(angle) + b1 * std::sin(angle) +
                             0.5 * (a2 * std::cos(2 * angle) + b2 * std::sin(2 * angle)));
            }
            return SphereFunction::circle(std::move(values));
        }();
        const auto result = spl_verify(f, g, 0.5, 1e-2);
        if (!result.holds) {
            ++violations;
            Json doc{{"violation", "spl"}, {"trial", trial}, {"lhs", result.lhs},
                     {"rhs", result.rhs}};
            out << doc.dump() << "\n";
        }
    }
    out << "spl trials: " << trials << " on the " << nodes << "-node circle grid\n";
    return violations;
}

int suite_switch(const RunConfig& config, std::ostream& out) {
    const auto simplex = config.input_path.empty()
                             ? random_covering_simplex(config.dim, config.seed)
                             : load_simplex(config.input_path, config.normalize, false);
    const std::int64_t n = config.samples;
    int violations = 0;

    const auto voronoi = [&](const double* x, std::int64_t) { return voronoi_assign(simplex, x); };
    const auto equality = verify_switch_region(simplex, voronoi, n, config.seed);
    if (!(equality.holds && equality.lhs == equality.rhs)) {
        ++violations;
        out << Json{{"violation", "switch-region-equality"}}.dump() << "\n";
    }

    const int k = simplex.vertex_count();
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t label_seed = rng::derive_seed(config.seed, 500 + trial);
        const auto random_labels = [&](const double*, std::int64_t index) {
            return static_cast<int>(rng::derive_seed(label_seed,
                                                     static_cast<std::uint64_t>(index)) %
                                    static_cast<std::uint64_t>(k));
        };
        const auto check = verify_switch_region(simplex, random_labels, n,
                                                rng::derive_seed(config.seed, 600 + trial));
        if (!check.holds) {
            ++violations;
            out << Json{{"violation", "switch-region"}, {"trial", trial}}.dump() << "\n";
        }
    }

    const Region cap = cap_region(project((Vec(3) << 1.0, 0.3, -0.2).finished()), 0.55);
    for (int trial = 0; trial < 50; ++trial) {
        rng::NormalSampler gauss(rng::derive_seed(config.seed, 700 + trial));
        Vec raw(3);
        for (int i = 0; i < 3; ++i) raw[i] = gauss();
        const auto check = verify_switch_point(cap, project(raw), n,
                                               rng::derive_seed(config.seed, 800 + trial));
        if (!check.holds) {
            ++violations;
            out << Json{{"violation", "switch-point"}, {"trial", trial}}.dump() << "\n";
        }
    }
    out << "switch checks: 1 equality + 50 partitions + 50 points\n";
    return violations;
}

int cmd_verify(const RunConfig& config, const std::string& suite) {
    int violations = 0;
    if (suite == "shear")
        violations = suite_shear(config, std::cout);
    else if (suite == "lemma")
        violations = suite_lemma(config, std::cout);
    else if (suite == "spl")
        violations = suite_spl(config, std::cout);
    else if (suite == "switch")
        violations = suite_switch(config, std::cout);
    else
        throw InputError("unknown suite: " + suite);
    Json summary{{"suite", suite},        {"violations", violations},
                 {"dim", config.dim},     {"n_samples", config.samples},
                 {"seed", config.seed},   {"version", kVersion}};
    std::cout << summary.dump() << "\n";
    return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_experiment_strip(const RunConfig& config, double s, double t1, double t2) {
    const auto simplex = config.input_path.empty()
                             ? (config.dim == 4 ? reference_simplex4() : reference_triangle())
                             : load_spherical_simplex(config.input_path, config.normalize);
    const auto record = strip_ratio_experiment(simplex, s, t1, t2, config.samples, config.seed,
                                               config.test_mode);
    if (config.output_format == "csv") {
        std::cout << "s,t1,t2,ratio_early,ratio_late,gap,gap_std_error,verdict,"
                     "n_samples,seed,dim,version\n";
        std::cout << record.s << "," << record.t1 << "," << record.t2 << ","
                  << record.ratios[0] << "," << record.ratios[1] << "," << record.gap << ","
                  << record.gap_std_error << "," << to_string(record.verdict) << "," << record.n
                  << "," << record.seed << "," << simplex.dim() << "," << kVersion << "\n";
    } else {
        std::cout << strip_ratio_to_json(record, simplex.dim()).dump() << "\n";
    }
    return kExitOk;  // experiments report; they do not fail
}

int cmd_experiment_uniqueness(const RunConfig& config, std::vector<double> s_values) {
    const auto simplex = config.input_path.empty()
                             ? reference_simplex4()
                             : load_spherical_simplex(config.input_path, config.normalize);
    if (s_values.empty()) s_values = {0.0, 0.05, 0.1, 0.2};
    const auto sweep = centroid_uniqueness_experiment(simplex, s_values, config.samples,
                                                      config.seed);
    if (config.output_format == "csv") {
        std::cout << "s,slope,slope_std_error,acceptance_rate,n_samples,seed,dim,version\n";
        for (std::size_t i = 0; i < sweep.s_values.size(); ++i)
            std::cout << sweep.s_values[i] << "," << sweep.slopes[i] << ","
                      << sweep.slope_std_errors[i] << "," << sweep.acceptance_rates[i] << ","
                      << sweep.n << "," << sweep.seed << "," << simplex.dim() << "," << kVersion
                      << "\n";
    } else {
        // one record per shear value, then the sweep summary
        for (std::size_t i = 0; i < sweep.s_values.size(); ++i) {
            Json row{{"experiment", "centroid-uniqueness"},
                     {"s", sweep.s_values[i]},
                     {"slope", sweep.slopes[i]},
                     {"slope_std_error", sweep.slope_std_errors[i]},
                     {"acceptance_rate", sweep.acceptance_rates[i]},
                     {"dim", simplex.dim()},
                     {"n_samples", sweep.n},
                     {"seed", sweep.seed},
                     {"version", kVersion}};
            std::cout << row.dump() << "\n";
        }
        std::cout << sweep_to_json(sweep, simplex.dim()).dump() << "\n";
    }
    return kExitOk;
}

int cmd_generate(const RunConfig& config, const std::string& kind, double angle,
                 const std::string& out_path) {
    EuclideanSimplex simplex = [&] {
        if (kind == "regular") return regular_simplex(config.dim);
        if (kind == "random-covering") return random_covering_simplex(config.dim, config.seed);
        if (kind == "perturbed-regular")
            return perturbed_regular_simplex(config.dim, angle, config.seed);
        throw InputError("unknown kind: " + kind);
    }();
    save_simplex(simplex, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean width of simplexes inscribed in the unit ball"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig config;

    auto* meanwidth = app.add_subcommand("meanwidth", "estimate the mean width of a simplex");
    add_common_flags(meanwidth, config);

    auto* ascend_cmd = app.add_subcommand("ascend", "run the centroid ascent optimizer");
    add_common_flags(ascend_cmd, config);
    ascend_cmd->add_option("--tol", config.tol, "angular movement tolerance")
        ->check(CLI::PositiveNumber);
    ascend_cmd->add_option("--max-iters", config.max_iters, "iteration cap")
        ->check(CLI::PositiveNumber);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a property suite");
    add_common_flags(verify, config);
    verify->add_option("--suite", suite, "shear | lemma | spl | switch")->required();

    auto* experiment = app.add_subcommand("experiment", "run a recorded experiment");
    experiment->require_subcommand(1);
    double s_param = 0.1, t1 = 0.2, t2 = 0.25;
    auto* strip = experiment->add_subcommand("strip-ratio", "shear-strip ratio comparison");
    add_common_flags(strip, config);
    strip->add_option("--s", s_param, "shear parameter");
    strip->add_option("--t1", t1, "lower slope bound");
    strip->add_option("--t2", t2, "upper slope bound");
    std::vector<double> s_values;
    auto* uniqueness =
        experiment->add_subcommand("centroid-uniqueness", "centroid slope monotonicity sweep");
    add_common_flags(uniqueness, config);
    uniqueness->add_option("--s", s_values, "shear sweep values");

    std::string kind = "regular", out_path;
    double angle = 0.3;
    auto* generate = app.add_subcommand("generate", "write a simplex JSON file");
    add_common_flags(generate, config);
    generate->add_option("--kind", kind, "regular | random-covering | perturbed-regular");
    generate->add_option("--angle", angle, "perturbation angle (perturbed-regular)");
    generate->add_option("--out", out_path, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (meanwidth->parsed()) return cmd_meanwidth(config);
        if (ascend_cmd->parsed()) return cmd_ascend(config);
        if (verify->parsed()) return cmd_verify(config, suite);
        if (strip->parsed()) return cmd_experiment_strip(config, s_param, t1, t2);
        if (uniqueness->parsed()) return cmd_experiment_uniqueness(config, s_values);
        if (generate->parsed()) return cmd_generate(config, kind, angle, out_path);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
