#include "smw/ascent.hpp"

#include <cmath>

#include "test_util.hpp"

using namespace smw;

TEST_SUITE("ascent") {

TEST_CASE("regular simplex is an empirical fixed point") {
    const auto regular = regular_simplex(3);
    const auto next = lloyd_step(regular, 4000000, 3101);
    double movement = 0.0;
    for (int i = 0; i < 4; ++i)
        movement = std::max(movement, regular.vertex(i).angle_to(next.vertex(i)));
    // the empirical centroid jitters at ~7e-4 per cell at this sample count
    CHECK(movement < 3e-3);
}

TEST_CASE("a lloyd step improves a perturbed start") {
    const auto start = perturbed_regular_simplex(3, 0.3, 3200);
    const auto stepped = lloyd_step(start, 1000000, 3301);
    const auto before = mean_width_mc(start, 1000000, 3302);
    const auto after = mean_width_mc(stepped, 1000000, 3303);
    CHECK(after.value - before.value > 3.0 * std::hypot(after.std_error, before.std_error));
}

TEST_CASE("lloyd steps preserve covering") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto start = random_covering_simplex(4, 3400 + trial);
        const auto stepped = lloyd_step(start, 1000000, 3500 + trial);
        CHECK(covers_sphere(stepped.vertices()));
    }
}

TEST_CASE("non-covering starts are rejected") {
    // all vertices in the cap around e1, at different latitudes
    std::vector<UnitVector> capped;
    for (int i = 0; i < 4; ++i) {
        const UnitVector t = test::random_tangent(test::basis_vector(3, 0), 3600 + i);
        const double scale = 0.5 + 0.2 * i;
        capped.push_back(project(test::basis_vector(3, 0).coords() + scale * t.coords()));
    }
    const auto simplex = EuclideanSimplex::inscribed(capped);
    CHECK_THROWS_AS(lloyd_step(simplex, 100000, 1), DomainError);
    CHECK_THROWS_AS(ascend(simplex, 1e-3, 10, 100000, 1), DomainError);
}

TEST_CASE("ascend converges immediately from the regular start") {
    const auto trajectory = ascend(regular_simplex(3), 3e-3, 50, 4000000, 3700);
    CHECK(trajectory.converged);
    CHECK(trajectory.iterations == 1);
    REQUIRE(trajectory.steps.size() == 2);
    CHECK_FALSE(trajectory.steps.front().movement.has_value());
    CHECK(*trajectory.steps.back().movement < 3e-3);
}

TEST_CASE("ascend trajectories are monotone within noise") {
    const auto start = random_covering_simplex(3, 3800);
    const auto trajectory = ascend(start, 0.012, 60, 200000, 3900);
    CHECK(trajectory.converged);
    REQUIRE(trajectory.steps.size() >= 2);
    for (std::size_t i = 0; i + 1 < trajectory.steps.size(); ++i) {
        const auto& before = trajectory.steps[i].report.total;
        const auto& after = trajectory.steps[i + 1].report.total;
        CHECK(after.value >= before.value - 3.0 * std::hypot(after.std_error, before.std_error));
        CHECK(*trajectory.steps[i + 1].movement >= 0.0);
    }
    // moving toward the maximizer also moves toward regularity
    CHECK(trajectory.steps.back().regularity < trajectory.steps.front().regularity);
}

TEST_CASE("ascend flags non-convergence instead of failing") {
    const auto start = random_covering_simplex(3, 4000);
    const auto trajectory = ascend(start, 1e-9, 3, 100000, 4100);
    CHECK_FALSE(trajectory.converged);
    CHECK(trajectory.iterations == 3);
}

TEST_CASE("rotated starts follow equivalent trajectories") {
    const auto start = random_covering_simplex(3, 4200);
    const auto rotated = rotate_simplex(start, 4300);
    const auto a = ascend(start, 1e-9, 5, 400000, 4400);
    const auto b = ascend(rotated, 1e-9, 5, 400000, 4400);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        // the regularity metric is rotation invariant; MC noise differs
        // because the streams see rotated cells
        CHECK(std::abs(a.steps[i].regularity - b.steps[i].regularity) < 0.05);
    }
}

TEST_CASE("circumcenters are equidistant at the regular fixed point") {
    const auto regular = regular_simplex(4);
    const auto centers = circumcenters(regular);
    const double expected = centers[0].dot(centers[1]);
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            CHECK(std::abs(centers[i].dot(centers[j]) - expected) < 1e-10);
}

TEST_CASE("circumcenters equalize along a converged trajectory") {
    const double tol = 6e-3;
    const auto start = perturbed_regular_simplex(3, 0.3, 6100);
    const auto trajectory = ascend(start, tol, 80, 1000000, 6200);
    REQUIRE(trajectory.converged);
    const auto centers = circumcenters(trajectory.steps.back().simplex);
    double low = 2.0, high = -2.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            const double dot = centers[i].dot(centers[j]);
            low = std::min(low, dot);
            high = std::max(high, dot);
        }
    CHECK(high - low < 10.0 * tol);
}

TEST_CASE("voronoi partition achieves exact switch equality") {
    const auto simplex = random_covering_simplex(3, 4500);
    const auto voronoi = [&](const double* x, std::int64_t) {
        return voronoi_assign(simplex, x);
    };
    const auto check = verify_switch_region(simplex, voronoi, 200000, 4600);
    CHECK(check.holds);
    CHECK(check.lhs == check.rhs);
}

TEST_CASE("other partitions never beat the voronoi partition") {
    const auto simplex = random_covering_simplex(3, 4700);
    const int k = simplex.vertex_count();

    const auto random_labels = [&](const double*, std::int64_t index) {
        return static_cast<int>(rng::derive_seed(4800, static_cast<std::uint64_t>(index)) %
                                static_cast<std::uint64_t>(k));
    };
    const auto random_check = verify_switch_region(simplex, random_labels, 200000, 4900);
    CHECK(random_check.holds);
    CHECK(random_check.lhs < random_check.rhs);

    const auto swapped = [&](const double* x, std::int64_t) {
        const int cell = voronoi_assign(simplex, x);
        if (cell == 0) return 1;
        if (cell == 1) return 0;
        return cell;
    };
    const auto swap_check = verify_switch_region(simplex, swapped, 200000, 5000);
    CHECK(swap_check.holds);
    CHECK(swap_check.lhs < swap_check.rhs);
}

TEST_CASE("switch point equality at the centroid") {
    const Region cap = cap_region(test::random_unit(3, 5100), 0.6);
    const auto est = centroid(cap, 200000, 5200);
    const auto at_centroid = verify_switch_point(cap, est.direction, 200000, 5200);
    CHECK(at_centroid.holds);
    CHECK(std::abs(at_centroid.lhs - at_centroid.rhs) < 1e-12);

    const auto opposite =
        verify_switch_point(cap, project(-est.direction.coords()), 200000, 5200);
    CHECK(opposite.holds);
    CHECK(opposite.lhs == doctest::Approx(-opposite.rhs).epsilon(1e-12));

    for (int trial = 0; trial < 20; ++trial) {
        const auto check =
            verify_switch_point(cap, test::random_unit(3, 5300 + trial), 100000, 5400 + trial);
        CHECK(check.holds);
        CHECK(check.lhs <= check.rhs + 1e-12);
    }
}

TEST_CASE("necessary conditions classify the anchors") {
    const auto regular = check_necessary_conditions(regular_simplex(3));
    CHECK(regular.smallest_ball_is_unit);
    CHECK(regular.unit_vertices);
    CHECK(regular.hemispheres_cover);

    std::vector<Vec> capped;
    for (int i = 0; i < 4; ++i) {
        const UnitVector t = test::random_tangent(test::basis_vector(3, 0), 5500 + i);
        capped.push_back(project(test::basis_vector(3, 0).coords() + 0.8 * t.coords()).coords());
    }
    const auto hemisphere = check_necessary_conditions(capped);
    CHECK_FALSE(hemisphere.smallest_ball_is_unit);
    CHECK(hemisphere.unit_vertices);
    CHECK_FALSE(hemisphere.hemispheres_cover);

    std::vector<Vec> scaled;
    for (int i = 0; i < regular_simplex(3).vertex_count(); ++i)
        scaled.push_back(0.9 * regular_simplex(3).vertex_matrix().col(i));
    const auto shrunk = check_necessary_conditions(scaled);
    CHECK_FALSE(shrunk.smallest_ball_is_unit);
    CHECK_FALSE(shrunk.unit_vertices);
}

TEST_CASE("empty cells are reported") {
    // with fewer than 10 samples per cell on average, some cell must fall
    // under the floor (4 cells cannot all reach 10 out of 30 samples)
    CHECK_THROWS_AS(lloyd_step(regular_simplex(3), 30, 6000), EmptyCell);
}

}  // TEST_SUITE
