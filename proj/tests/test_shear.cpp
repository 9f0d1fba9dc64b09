#include "smw/shear.hpp"

#include <cmath>

#include "smw/regions.hpp"
#include "test_util.hpp"

using namespace smw;

namespace {

// Finite-difference surface Jacobian: push an orthonormal tangent frame
// through the map and take the determinant of the (d-1)x(d-1) differential.
double fd_surface_jacobian(const ShearMap& shear, const UnitVector& x, double step) {
    const int d = x.dim();
    const Mat frame_x = test::tangent_basis(x);
    const UnitVector y0 = shear.apply(x);
    const Mat frame_y = test::tangent_basis(y0);
    Mat differential(d - 1, d - 1);
    for (int k = 0; k < d - 1; ++k) {
        const Vec plus = shear.apply(project(x.coords() + step * frame_x.col(k))).coords();
        const Vec minus = shear.apply(project(x.coords() - step * frame_x.col(k))).coords();
        // the perturbed points sit at angle atan(step) from x
        const Vec delta = (plus - minus) / (2.0 * std::atan(step));
        differential.col(k) = frame_y.transpose() * delta;
    }
    return std::abs(differential.determinant());
}

}  // namespace

TEST_SUITE("shear") {

TEST_CASE("apply anchors") {
    const ShearMap identity(0.0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const UnitVector x = test::random_unit(3, 100 + trial);
        CHECK((identity.apply(x).coords() - x.coords()).norm() < 1e-15);
    }

    const ShearMap strong(2.5, 4);
    const UnitVector e2 = test::basis_vector(4, 1);
    CHECK((strong.apply(e2).coords() - e2.coords()).norm() < 1e-15);

    const ShearMap unit(1.0, 3);
    const UnitVector e1 = test::basis_vector(3, 0);
    const Vec image = unit.apply(e1).coords();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(image[0] == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(image[1] == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(std::abs(image[2]) < 1e-15);
}

TEST_CASE("first coordinate is preserved up to normalization") {
    const ShearMap shear(0.7, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const UnitVector x = test::random_unit(4, 300 + trial);
        const UnitVector y = shear.apply(x);
        // signs match and x1 = 0 stays fixed
        CHECK(std::signbit(y[0]) == std::signbit(x[0]));
    }
}

TEST_CASE("jacobian closed form anchors") {
    const ShearMap identity(0.0, 5);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(identity.jacobian(test::random_unit(5, trial)) == doctest::Approx(1.0).epsilon(1e-14));

    // x1 = 0 is fixed pointwise for every shear
    const ShearMap shear(1.3, 4);
    Vec equatorial(4);
    equatorial << 0.0, 0.6, 0.0, 0.8;
    CHECK(shear.jacobian(UnitVector(equatorial)) == doctest::Approx(1.0).epsilon(1e-14));

    const ShearMap unit(1.0, 3);
    CHECK(unit.jacobian(test::basis_vector(3, 0)) ==
          doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
}

TEST_CASE("jacobian matches finite differences") {
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 3 + trial % 3;
        rng::Xoshiro256pp gen(7000 + trial);
        const double s = -2.0 + 4.0 * gen.uniform();
        const ShearMap shear(s, d);
        const UnitVector x = test::random_unit(d, 7700 + trial);
        const double analytic = shear.jacobian(x);
        const double numeric = fd_surface_jacobian(shear, x, 1e-5);
        CHECK(std::abs(analytic - numeric) / analytic < 1e-5);
    }
}

TEST_CASE("pushforward density is the inverse jacobian") {
    const ShearMap shear(0.4, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const UnitVector x = test::random_unit(3, 50 + trial);
        CHECK(shear.pushforward_density(x) ==
              doctest::Approx(shear.inverse().jacobian(x)).epsilon(1e-15));
    }
    const ShearMap identity(0.0, 3);
    CHECK(identity.pushforward_density(test::random_unit(3, 2)) == 1.0);
}

TEST_CASE("pushforward density integrates to one") {
    const std::int64_t n = 1000000;
    const ShearMap shear(0.6, 3);
    const auto samples = sample_uniform(3, n, 321);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& x : samples) {
        const double density = shear.pushforward_density(x);
        sum += density;
        sum_sq += density * density;
    }
    const double mean = sum / n;
    const double sigma = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0) < 3.0 * sigma);
}

TEST_CASE("change of variables for x1 squared") {
    const std::int64_t n = 1000000;
    const ShearMap shear(0.8, 3);
    const auto samples = sample_uniform(3, n, 5555);
    // same-stream difference of the two estimators of E[phi(f_s X)]
    double sum = 0.0, sum_sq = 0.0;
    Vec image(3);
    for (const auto& x : samples) {
        shear.apply(x.coords().data(), image.data());
        const double direct = image[0] * image[0];
        const double weighted = x[0] * x[0] * shear.pushforward_density(x);
        const double delta = direct - weighted;
        sum += delta;
        sum_sq += delta * delta;
    }
    const double mean = sum / n;
    const double sigma = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean) < 3.0 * sigma);
}

TEST_CASE("map_pole anchors and tangency") {
    const ShearMap shear(1.7, 4);
    const UnitVector e3 = test::basis_vector(4, 2);
    CHECK((shear.map_pole(e3).coords() - e3.coords()).norm() < 1e-15);

    const ShearMap identity(0.0, 4);
    const UnitVector p = test::random_unit(4, 31);
    CHECK((identity.map_pole(p).coords() - p.coords()).norm() < 1e-15);

    for (int trial = 0; trial < 200; ++trial) {
        const int d = 3 + trial % 3;
        rng::Xoshiro256pp gen(41000 + trial);
        const ShearMap map(-2.0 + 4.0 * gen.uniform(), d);
        const UnitVector pole = test::random_unit(d, 42000 + trial);
        // random point on the great sphere with this pole
        Vec raw = test::random_unit(d, 43000 + trial).coords();
        raw -= raw.dot(pole.coords()) * pole.coords();
        const UnitVector x = project(raw);
        CHECK(std::abs(map.apply(x).dot(map.map_pole(pole))) < 1e-12);
    }
}

TEST_CASE("group law and inverse") {
    for (int trial = 0; trial < 10000; ++trial) {
        const int d = 3 + trial % 3;
        rng::Xoshiro256pp gen(60000 + trial);
        const double s = -2.0 + 4.0 * gen.uniform();
        const double t = -2.0 + 4.0 * gen.uniform();
        const UnitVector x = test::random_unit(d, 61000 + trial);
        const ShearMap fs(s, d), ft(t, d), fsum(s + t, d);
        CHECK((fsum.apply(x).coords() - fs.apply(ft.apply(x)).coords()).norm() < 1e-12);
        CHECK((ShearMap(-s, d).apply(fs.apply(x)).coords() - x.coords()).norm() < 1e-12);
    }
}

TEST_CASE("great spheres map to great spheres") {
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 3 + trial % 3;
        rng::Xoshiro256pp gen(70000 + trial);
        const ShearMap shear(-2.0 + 4.0 * gen.uniform(), d);
        const UnitVector pole = test::random_unit(d, 71000 + trial);
        Mat images(100, d);
        for (int i = 0; i < 100; ++i) {
            Vec raw = test::random_unit(d, 72000 + 100 * trial + i).coords();
            raw -= raw.dot(pole.coords()) * pole.coords();
            images.row(i) = shear.apply(project(raw)).coords().transpose();
        }
        Eigen::JacobiSVD<Mat> svd(images);
        CHECK(svd.singularValues()[d - 1] < 1e-10);
    }
}

TEST_CASE("spherical simplexes map to spherical simplexes") {
    std::vector<UnitVector> generators;
    generators.push_back(project((Vec(3) << 1.0, -0.05, 0.2).finished()));
    generators.push_back(project((Vec(3) << 1.0, 0.30, 0.1).finished()));
    generators.push_back(project((Vec(3) << 1.0, 0.10, -0.25).finished()));
    const SphericalSimplex cone(generators);
    const double s = 0.45;
    const ShearMap shear(s, 3);

    // image generators span the image cone
    std::vector<UnitVector> image_gens;
    for (const auto& g : generators) image_gens.push_back(shear.apply(g));
    const SphericalSimplex image(image_gens);

    const auto samples = sample_uniform(3, 20000, 987);
    for (const auto& x : samples) {
        if (!cone.contains(x)) continue;
        CHECK(image.contains(shear.apply(x)));
    }
}

TEST_CASE("jacobian chain rule across the inverse") {
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 3 + trial % 3;
        rng::Xoshiro256pp gen(81000 + trial);
        const double s = -2.0 + 4.0 * gen.uniform();
        const ShearMap fs(s, d);
        const UnitVector x = test::random_unit(d, 82000 + trial);
        const double chained = fs.jacobian(x) * fs.inverse().jacobian(fs.apply(x));
        CHECK(std::abs(chained - 1.0) < 1e-10);
    }
}

}  // TEST_SUITE
