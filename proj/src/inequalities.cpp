#include "smw/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace smw {

namespace {

constexpr double kPi = 3.14159265358979323846;

AggregationResult evaluate_tuple(const EightTuple& t, bool reversed) {
    for (int i = 0; i < 2; ++i)
        if (!(t.alpha[static_cast<std::size_t>(i)] > 0.0) ||
            !(t.beta[static_cast<std::size_t>(i)] > 0.0))
            throw NonPositiveWeight("alpha and beta entries must be positive");

    const double ra1 = t.a[0] / t.alpha[0];
    const double ra2 = t.a[1] / t.alpha[1];
    const double rb1 = t.b[0] / t.beta[0];
    const double rb2 = t.b[1] / t.beta[1];

    const bool middle = reversed ? (ra1 >= ra2) : (ra1 <= ra2);
    const bool right = reversed ? (t.alpha[1] / t.alpha[0] >= t.beta[1] / t.beta[0])
                                : (t.alpha[1] / t.alpha[0] <= t.beta[1] / t.beta[0]);
    const bool left = ra1 <= rb1 && ra2 <= rb2;

    const double combined_b = (t.b[0] + t.b[1]) / (t.beta[0] + t.beta[1]);
    const double combined_a = (t.a[0] + t.a[1]) / (t.alpha[0] + t.alpha[1]);

    // decomposition of the combined-ratio difference
    const double delta1 = rb1 - ra1;
    const double delta2 = rb2 - ra2;
    const double delta_a_alpha = ra2 - ra1;
    const double delta_alpha_beta = t.beta[1] / t.alpha[1] - t.beta[0] / t.alpha[0];
    const double term1 = t.beta[0] * delta1;
    const double term2 = t.beta[1] * delta2;
    const double term3 =
        (t.alpha[0] * t.alpha[1] / (t.alpha[0] + t.alpha[1])) * delta_a_alpha * delta_alpha_beta;
    const double decomposition = (term1 + term2 + term3) / (t.beta[0] + t.beta[1]);

    const double difference = combined_b - combined_a;
    const double scale = std::max({1e-300, std::abs(difference), std::abs(decomposition),
                                   (std::abs(term1) + std::abs(term2) + std::abs(term3)) /
                                       (t.beta[0] + t.beta[1]),
                                   std::abs(combined_b) + std::abs(combined_a)});

    AggregationResult result;
    result.hypothesis_holds = left && middle && right;
    result.conclusion_holds = combined_a <= combined_b + 1e-15 * scale;
    result.identity_residual = std::abs(difference - decomposition) / scale;
    return result;
}

}  // namespace

AggregationResult simpson_antidote(const EightTuple& t) { return evaluate_tuple(t, false); }

AggregationResult reversed_simpson_antidote(const EightTuple& t) {
    return evaluate_tuple(t, true);
}

double pl_constant(double theta, int d) {
    if (d < 3) throw DomainError("pl_constant requires d >= 3");
    if (!(theta > 0.0)) throw DomainError("pl_constant requires theta > 0");
    if (theta >= kPi - 1e-9) throw AntipodalPoints("pl_constant undefined near theta = pi");
    return std::cos(0.5 * theta);
}

double sinc(double theta) {
    if (std::abs(theta) < 1e-8) return 1.0 - theta * theta / 6.0;
    return std::sin(theta) / theta;
}

UnitVector geodesic_combine(const UnitVector& q1, const UnitVector& q3, double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw DomainError("lambda must lie in [0, 1]");
    const double cosine = q1.dot(q3);
    if (cosine <= -1.0 + 1e-9) throw AntipodalPoints("geodesic through antipodal points");
    const double theta = std::acos(std::clamp(cosine, -1.0, 1.0));
    if (theta < 1e-12) return project(q1.coords() + q3.coords());
    return project(std::sin(lambda * theta) * q1.coords() +
                   std::sin((1.0 - lambda) * theta) * q3.coords());
}

SphereFunction SphereFunction::circle(std::vector<double> values) {
    const std::size_t n = values.size();
    if (n < 8 || (n & (n - 1)) != 0)
        throw DomainError("circle grid resolution must be a power of two, at least 8");
    for (double v : values)
        if (!(v >= 0.0)) throw DomainError("sphere functions must be nonnegative");
    SphereFunction f;
    f.ambient_dim_ = 3;
    f.values_ = std::move(values);
    f.weights_.assign(f.values_.size(), 1.0 / static_cast<double>(f.values_.size()));
    return f;
}

SphereFunction SphereFunction::sphere(int n_theta, int n_phi, std::vector<double> values) {
    if (n_theta < 2 || n_phi < 4) throw DomainError("sphere grid too small");
    if (static_cast<int>(values.size()) != n_theta * n_phi)
        throw DomainError("sphere grid value count mismatch");
    for (double v : values)
        if (!(v >= 0.0)) throw DomainError("sphere functions must be nonnegative");
    SphereFunction f;
    f.ambient_dim_ = 4;
    f.n_theta_ = n_theta;
    f.n_phi_ = n_phi;
    f.values_ = std::move(values);
    f.weights_.resize(f.values_.size());
    double total = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double w = std::sin(kPi * (i + 0.5) / n_theta);
        for (int j = 0; j < n_phi; ++j) total += w;
    }
    for (int i = 0; i < n_theta; ++i) {
        const double w = std::sin(kPi * (i + 0.5) / n_theta) / total;
        for (int j = 0; j < n_phi; ++j)
            f.weights_[static_cast<std::size_t>(i * n_phi + j)] = w;
    }
    return f;
}

double SphereFunction::integral() const {
    KahanSum sum;
    for (std::size_t i = 0; i < values_.size(); ++i) sum.add(values_[i] * weights_[i]);
    return sum.value();
}

Vec SphereFunction::node(int i) const {
    if (ambient_dim_ == 3) {
        const double angle = 2.0 * kPi * i / node_count();
        Vec v(2);
        v << std::cos(angle), std::sin(angle);
        return v;
    }
    const int ti = i / n_phi_;
    const int pj = i % n_phi_;
    const double theta = kPi * (ti + 0.5) / n_theta_;
    const double phi = 2.0 * kPi * (pj + 0.5) / n_phi_;
    Vec v(3);
    v << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
    return v;
}

bool SphereFunction::same_grid(const SphereFunction& other) const {
    return ambient_dim_ == other.ambient_dim_ && node_count() == other.node_count() &&
           n_theta_ == other.n_theta_ && n_phi_ == other.n_phi_;
}

SphereFunction load_circle_csv(const std::string& path, int value_column) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open grid CSV: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.empty()) continue;
        try {
            (void)std::stod(fields[0]);
        } catch (...) {
            continue;  // header row
        }
        if (static_cast<int>(fields.size()) <= value_column)
            throw InputError("grid CSV row lacks value column: " + line);
        const double v = std::stod(fields[static_cast<std::size_t>(value_column)]);
        values.push_back(v);
    }
    return SphereFunction::circle(std::move(values));
}

namespace {

std::vector<int> support_nodes(const SphereFunction& f) {
    std::vector<int> idx;
    for (int i = 0; i < f.node_count(); ++i)
        if (f.values()[static_cast<std::size_t>(i)] > 0.0) idx.push_back(i);
    return idx;
}

void spl_envelope_circle(const SphereFunction& f, const SphereFunction& g, double lambda,
                         std::vector<double>& h) {
    const int n = f.node_count();
    const int half = n / 2;
    std::vector<double> f_pow(static_cast<std::size_t>(n), 0.0);
    std::vector<double> g_pow(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        f_pow[static_cast<std::size_t>(i)] =
            std::pow(f.values()[static_cast<std::size_t>(i)], 1.0 - lambda);
        g_pow[static_cast<std::size_t>(i)] =
            std::pow(g.values()[static_cast<std::size_t>(i)], lambda);
    }
    const auto fs = support_nodes(f);
    const auto gs = support_nodes(g);
    for (int i : fs) {
        const double fp = f_pow[static_cast<std::size_t>(i)];
        for (int j : gs) {
            int dj = j - i;
            if (dj > half) dj -= n;
            if (dj < -half) dj += n;
            if (dj == half || dj == -half) continue;  // antipodal pair, midpoint undefined
            // combined point at arc fraction (1 - lambda) from node i toward node j
            const int k = (i + static_cast<int>(std::llround((1.0 - lambda) * dj)) + n) % n;
            const double required = fp * g_pow[static_cast<std::size_t>(j)];
            auto& slot = h[static_cast<std::size_t>(k)];
            if (required > slot) slot = required;
        }
    }
}

void spl_envelope_sphere(const SphereFunction& f, const SphereFunction& g, double lambda,
                         std::vector<double>& h) {
    const int p = f.ambient_dim() - 3;  // sinc exponent
    const auto fs = support_nodes(f);
    const auto gs = support_nodes(g);
    const int n_theta = f.n_theta();
    const int n_phi = f.n_phi();
    std::vector<Vec> nodes(static_cast<std::size_t>(f.node_count()));
    for (int i = 0; i < f.node_count(); ++i) nodes[static_cast<std::size_t>(i)] = f.node(i);
    for (int i : fs) {
        const Vec& q1 = nodes[static_cast<std::size_t>(i)];
        const double fv = f.values()[static_cast<std::size_t>(i)];
        for (int j : gs) {
            const Vec& q3 = nodes[static_cast<std::size_t>(j)];
            const double cosine = q1.dot(q3);
            if (cosine <= -1.0 + 1e-9) continue;  // antipodal pair
            const double theta = std::acos(std::clamp(cosine, -1.0, 1.0));
            const double gv = g.values()[static_cast<std::size_t>(j)];
            const double required =
                std::pow(fv / std::pow(sinc((1.0 - lambda) * theta), p), 1.0 - lambda) *
                std::pow(gv / std::pow(sinc(lambda * theta), p), lambda) *
                std::pow(sinc(theta), p);
            Vec q2;
            if (theta < 1e-12) {
                q2 = q1;
            } else {
                q2 = std::sin(lambda * theta) * q1 + std::sin((1.0 - lambda) * theta) * q3;
                q2.normalize();
            }
            const double colat = std::acos(std::clamp(q2[2], -1.0, 1.0));
            double az = std::atan2(q2[1], q2[0]);
            if (az < 0) az += 2.0 * kPi;
            int ti = static_cast<int>(std::llround(colat / kPi * n_theta - 0.5));
            int pj = static_cast<int>(std::llround(az / (2.0 * kPi) * n_phi - 0.5)) % n_phi;
            ti = std::clamp(ti, 0, n_theta - 1);
            if (pj < 0) pj += n_phi;
            auto& slot = h[static_cast<std::size_t>(ti * n_phi + pj)];
            if (required > slot) slot = required;
        }
    }
}

}  // namespace

SplResult spl_verify(const SphereFunction& f, const SphereFunction& g, double lambda,
                     double slack) {
    if (!f.same_grid(g)) throw GridMismatch("spl_verify requires matching grids");
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
    if (!(slack >= 0.0)) throw DomainError("slack must be nonnegative");

    SplResult result;
    const double int_f = f.integral();
    const double int_g = g.integral();
    result.rhs = std::pow(int_f, 1.0 - lambda) * std::pow(int_g, lambda);
    result.envelope.assign(static_cast<std::size_t>(f.node_count()), 0.0);
    if (int_f == 0.0 || int_g == 0.0) {
        result.empty_support = true;
        result.lhs = 0.0;
        result.rhs = 0.0;
        result.holds = true;
        return result;
    }

    if (f.ambient_dim() == 3)
        spl_envelope_circle(f, g, lambda, result.envelope);
    else
        spl_envelope_sphere(f, g, lambda, result.envelope);

    KahanSum lhs;
    for (int i = 0; i < f.node_count(); ++i)
        lhs.add(result.envelope[static_cast<std::size_t>(i)] *
                f.weights()[static_cast<std::size_t>(i)]);
    result.lhs = lhs.value();
    result.holds = result.lhs >= result.rhs * (1.0 - slack);
    return result;
}

}  // namespace smw
