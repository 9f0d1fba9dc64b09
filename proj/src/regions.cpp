#include "smw/regions.hpp"

#include <algorithm>
#include <cmath>

namespace smw {

Region hemisphere_region(int d) {
    Region r;
    r.dim = d;
    r.label = "hemisphere(x1>=0)";
    r.hemisphere_safe = true;
    r.contains = [](const double* x) { return x[0] >= 0.0; };
    return r;
}

Region cap_region(const UnitVector& pole, double height) {
    Region r;
    r.dim = pole.dim();
    r.label = "cap";
    // cap lies in the hemisphere iff its angular radius fits beside the pole
    r.hemisphere_safe =
        std::acos(std::clamp(pole[0], -1.0, 1.0)) + std::acos(std::clamp(height, -1.0, 1.0)) <=
        1.5707963267948966;
    const Vec p = pole.coords();
    const int d = r.dim;
    r.contains = [p, d, height](const double* x) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += p[i] * x[i];
        return dot >= height;
    };
    return r;
}

Region spherical_simplex_region(SphericalSimplex simplex, bool hemisphere_safe) {
    Region r;
    r.dim = simplex.dim();
    r.label = "spherical-simplex";
    r.hemisphere_safe = hemisphere_safe;
    r.contains = [ss = std::move(simplex)](const double* x) { return ss.contains(x); };
    return r;
}

Region sheared_region(const Region& base, const ShearMap& shear) {
    if (base.dim != shear.dim()) throw DomainError("region/shear dimension mismatch");
    Region r;
    r.dim = base.dim;
    r.label = base.label + "+shear";
    r.hemisphere_safe = base.hemisphere_safe;  // f_s preserves the sign of x1
    const ShearMap inv = shear.inverse();
    r.contains = [contains = base.contains, inv](const double* x) {
        double y[16];
        inv.apply(x, y);
        return contains(y);
    };
    if (base.dim > 16) throw DomainError("sheared_region supports d <= 16");
    return r;
}

StripInterval::StripInterval(double lo, double hi) : t_lo(lo), t_hi(hi) {
    if (!(lo < hi)) throw DomainError("strip interval requires t_lo < t_hi");
}

namespace {

struct VectorMoments {
    Vec sum;
    Mat second;
    std::int64_t accepted = 0;
};

}  // namespace

CentroidEstimate centroid(const Region& region, std::int64_t n, std::uint64_t seed) {
    const int d = region.dim;
    auto partials = mc::map_sample_chunks<VectorMoments>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            VectorMoments m;
            m.sum = Vec::Zero(d);
            m.second = Mat::Zero(d, d);
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                if (!region.contains(x)) continue;
                if (region.hemisphere_safe && x[0] < -1e-12)
                    throw DomainError("hemisphere_safe region accepted x1 < 0");
                m.accepted += 1;
                for (int a = 0; a < d; ++a) {
                    m.sum[a] += x[a];
                    for (int b = a; b < d; ++b) m.second(a, b) += x[a] * x[b];
                }
            }
            return m;
        });

    std::vector<KahanSum> sums(static_cast<std::size_t>(d));
    Mat second = Mat::Zero(d, d);
    std::int64_t accepted = 0;
    for (const auto& p : partials) {
        for (int a = 0; a < d; ++a) sums[static_cast<std::size_t>(a)].add(p.sum[a]);
        second += p.second;
        accepted += p.accepted;
    }
    if (accepted == 0) throw EmptyRegion("region accepted no samples: " + region.label);

    Vec resultant(d);
    for (int a = 0; a < d; ++a) resultant[a] = sums[static_cast<std::size_t>(a)].value();
    const double inv_n = 1.0 / static_cast<double>(n);
    const Vec mean = resultant * inv_n;
    const double resultant_norm = mean.norm();
    if (resultant_norm < kResultantTol)
        throw UndefinedCentroid("empirical resultant norm below 1e-6 for " + region.label);

    // covariance of the mean (upper triangle was accumulated)
    Mat cov(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            const double m2 = second(a, b) * inv_n;
            cov(a, b) = cov(b, a) = (m2 - mean[a] * mean[b]) * inv_n;
        }

    const Vec direction = mean / resultant_norm;
    const Mat tangential = Mat::Identity(d, d) - direction * direction.transpose();
    const double ang_var = (tangential * cov * tangential.transpose()).trace() /
                           (resultant_norm * resultant_norm);

    CentroidEstimate est{project(mean), resultant_norm, std::sqrt(std::max(0.0, ang_var)),
                         MonteCarloEstimate{}, accepted};
    est.measure.value = static_cast<double>(accepted) * inv_n;
    est.measure.std_error = std::sqrt(
        std::max(0.0, est.measure.value * (1.0 - est.measure.value) * inv_n));
    est.measure.n_samples = n;
    est.measure.seed = seed;
    return est;
}

MonteCarloEstimate strip_integral(const Region& region, const StripInterval& interval,
                                  int coordinate, std::int64_t n, std::uint64_t seed) {
    if (!region.hemisphere_safe)
        throw DomainError("strip_integral requires a hemisphere_safe region");
    if (coordinate != 1 && coordinate != 2)
        throw DomainError("strip_integral coordinate must be 1 or 2");
    const int d = region.dim;
    const int c = coordinate - 1;

    struct Partial {
        double sum = 0.0;
        double sq = 0.0;
        std::int64_t accepted = 0;
    };
    auto partials = mc::map_sample_chunks<Partial>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            Partial p;
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                if (x[0] < kStripX1Min) continue;  // measure-zero boundary discarded
                if (!interval.contains_slope(x[1] / x[0])) continue;
                if (!region.contains(x)) continue;
                p.accepted += 1;
                p.sum += x[c];
                p.sq += x[c] * x[c];
            }
            return p;
        });

    std::vector<std::pair<double, double>> reduced;
    reduced.reserve(partials.size());
    std::int64_t accepted = 0;
    for (const auto& p : partials) {
        reduced.emplace_back(p.sum, p.sq);
        accepted += p.accepted;
    }
    if (accepted == 0) throw EmptyRegion("strip accepted no samples: " + region.label);
    return reduce_mean_estimate(reduced, n, seed);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        default: return "inconclusive";
    }
}

StripRatioRecord strip_ratio_experiment(const SphericalSimplex& simplex, double s, double t1,
                                        double t2, std::int64_t n, std::uint64_t seed,
                                        bool test_mode) {
    if (!test_mode && !(0.0 < t2 - t1 && t2 - t1 < s))
        throw DomainError("strip_ratio_experiment requires 0 < t2 - t1 < s");
    if (test_mode && !(t1 < t2)) throw DomainError("strip interval requires t1 < t2");
    const int d = simplex.dim();
    if (d > 16) throw DomainError("strip_ratio_experiment supports d <= 16");
    const StripInterval early(t1 - s, t2 - s);
    const StripInterval late(t1, t2);

    struct Partial {
        std::array<double, 4> sum{};
        std::array<std::array<double, 4>, 4> prod{};
    };
    auto partials = mc::map_sample_chunks<Partial>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            Partial p;
            double pulled[16];
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                if (x[0] < kStripX1Min) continue;
                const double slope = x[1] / x[0];
                const bool in_early = early.contains_slope(slope);
                const bool in_late = late.contains_slope(slope);
                if (!in_early && !in_late) continue;
                // membership in f_s(S) via the inverse shear; cone coordinates
                // are scale-free so the pulled vector needs no normalization
                for (int j = 0; j < d; ++j) pulled[j] = x[j];
                pulled[1] -= s * x[0];
                const bool in_plain = simplex.contains(x);
                const bool in_shear = simplex.contains(pulled);
                std::array<double, 4> y{};
                if (in_shear && in_early) y[0] = x[0];
                if (in_plain && in_early) y[1] = x[0];
                if (in_shear && in_late) y[2] = x[0];
                if (in_plain && in_late) y[3] = x[0];
                for (int a = 0; a < 4; ++a) {
                    if (y[a] == 0.0) continue;
                    p.sum[a] += y[a];
                    for (int b = 0; b < 4; ++b) p.prod[a][b] += y[a] * y[b];
                }
            }
            return p;
        });

    std::array<KahanSum, 4> sums;
    Eigen::Matrix4d prods = Eigen::Matrix4d::Zero();
    for (const auto& p : partials) {
        for (int a = 0; a < 4; ++a) {
            sums[static_cast<std::size_t>(a)].add(p.sum[a]);
            for (int b = 0; b < 4; ++b) prods(a, b) += p.prod[a][b];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::Vector4d mean;
    for (int a = 0; a < 4; ++a) mean[a] = sums[static_cast<std::size_t>(a)].value() * inv_n;
    if (mean[1] == 0.0 || mean[3] == 0.0)
        throw EmptyRegion("strip_ratio_experiment: a plain-region strip is empty");
    const Eigen::Matrix4d cov = (prods * inv_n - mean * mean.transpose()) * inv_n;

    StripRatioRecord rec;
    rec.s = s;
    rec.t1 = t1;
    rec.t2 = t2;
    rec.n = n;
    rec.seed = seed;
    for (int a = 0; a < 4; ++a) {
        rec.integrals[static_cast<std::size_t>(a)] = mean[a];
        rec.integral_std_errors[static_cast<std::size_t>(a)] =
            std::sqrt(std::max(0.0, cov(a, a)));
    }
    rec.ratios[0] = mean[0] / mean[1];
    rec.ratios[1] = mean[2] / mean[3];
    auto ratio_sigma = [&](int num, int den) {
        Eigen::Vector4d grad = Eigen::Vector4d::Zero();
        grad[num] = 1.0 / mean[den];
        grad[den] = -mean[num] / (mean[den] * mean[den]);
        return std::sqrt(std::max(0.0, grad.dot(cov * grad)));
    };
    rec.ratio_std_errors[0] = ratio_sigma(0, 1);
    rec.ratio_std_errors[1] = ratio_sigma(2, 3);

    Eigen::Vector4d grad;
    grad[0] = -1.0 / mean[1];
    grad[1] = mean[0] / (mean[1] * mean[1]);
    grad[2] = 1.0 / mean[3];
    grad[3] = -mean[2] / (mean[3] * mean[3]);
    rec.gap = rec.ratios[1] - rec.ratios[0];
    rec.gap_std_error = std::sqrt(std::max(0.0, grad.dot(cov * grad)));
    if (rec.gap > 3.0 * rec.gap_std_error)
        rec.verdict = Verdict::consistent;
    else if (rec.gap < -3.0 * rec.gap_std_error)
        rec.verdict = Verdict::violated;
    else
        rec.verdict = Verdict::inconclusive;
    return rec;
}

CentroidSlopeSweep centroid_uniqueness_experiment(const SphericalSimplex& simplex,
                                                  const std::vector<double>& s_values,
                                                  std::int64_t n, std::uint64_t seed) {
    if (s_values.empty()) throw DomainError("centroid_uniqueness_experiment needs s values");
    const int d = simplex.dim();
    if (d > 16) throw DomainError("centroid_uniqueness_experiment supports d <= 16");
    const int k = static_cast<int>(s_values.size());

    struct Partial {
        // per shear value: sum x1, sum x2, sum x1^2, sum x2^2, sum x1 x2, count
        std::vector<std::array<double, 5>> moments;
        std::vector<std::int64_t> counts;
    };
    auto partials = mc::map_sample_chunks<Partial>(
        d, n, seed, [&](const RowMat& pts, std::int64_t rows, std::int64_t) {
            Partial p;
            p.moments.assign(static_cast<std::size_t>(k), {});
            p.counts.assign(static_cast<std::size_t>(k), 0);
            double pulled[16];
            for (std::int64_t i = 0; i < rows; ++i) {
                const double* x = pts.row(i).data();
                for (int si = 0; si < k; ++si) {
                    for (int j = 0; j < d; ++j) pulled[j] = x[j];
                    pulled[1] -= s_values[static_cast<std::size_t>(si)] * x[0];
                    if (!simplex.contains(pulled)) continue;
                    auto& m = p.moments[static_cast<std::size_t>(si)];
                    m[0] += x[0];
                    m[1] += x[1];
                    m[2] += x[0] * x[0];
                    m[3] += x[1] * x[1];
                    m[4] += x[0] * x[1];
                    p.counts[static_cast<std::size_t>(si)] += 1;
                }
            }
            return p;
        });

    CentroidSlopeSweep sweep;
    sweep.s_values = s_values;
    sweep.n = n;
    sweep.seed = seed;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int si = 0; si < k; ++si) {
        std::array<KahanSum, 5> sums;
        std::int64_t count = 0;
        for (const auto& p : partials) {
            for (int a = 0; a < 5; ++a)
                sums[static_cast<std::size_t>(a)].add(
                    p.moments[static_cast<std::size_t>(si)][static_cast<std::size_t>(a)]);
            count += p.counts[static_cast<std::size_t>(si)];
        }
        if (count == 0) throw EmptyRegion("sheared simplex accepted no samples");
        const double m1 = sums[0].value() * inv_n;
        const double m2 = sums[1].value() * inv_n;
        if (std::abs(m1) < 1e-12) throw UndefinedCentroid("centroid slope undefined: x1 mean ~ 0");
        const double c11 = (sums[2].value() * inv_n - m1 * m1) * inv_n;
        const double c22 = (sums[3].value() * inv_n - m2 * m2) * inv_n;
        const double c12 = (sums[4].value() * inv_n - m1 * m2) * inv_n;
        const double slope = m2 / m1;
        const double g1 = -m2 / (m1 * m1);
        const double g2 = 1.0 / m1;
        const double var = g1 * g1 * c11 + g2 * g2 * c22 + 2.0 * g1 * g2 * c12;
        sweep.slopes.push_back(slope);
        sweep.slope_std_errors.push_back(std::sqrt(std::max(0.0, var)));
        sweep.acceptance_rates.push_back(static_cast<double>(count) * inv_n);
    }

    bool increasing = true;
    bool violated = false;
    for (int si = 0; si + 1 < k; ++si) {
        const double gap = sweep.slopes[static_cast<std::size_t>(si + 1)] -
                           sweep.slopes[static_cast<std::size_t>(si)];
        const double sigma = std::hypot(sweep.slope_std_errors[static_cast<std::size_t>(si + 1)],
                                        sweep.slope_std_errors[static_cast<std::size_t>(si)]);
        if (!(gap > 3.0 * sigma)) increasing = false;
        if (gap < -3.0 * sigma) violated = true;
    }
    sweep.verdict = increasing ? Verdict::consistent
                               : (violated ? Verdict::violated : Verdict::inconclusive);
    return sweep;
}

}  // namespace smw
