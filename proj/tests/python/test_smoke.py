"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import smw


def test_project_normalizes():
    v = smw.project(np.array([3.0, 0.0, 0.0]))
    assert np.allclose(v, [1.0, 0.0, 0.0])
    with pytest.raises(smw.Error):
        smw.project(np.zeros(3))


def test_sampling_is_deterministic():
    a = smw.sample_uniform(4, 1000, seed=7)
    b = smw.sample_uniform(4, 1000, seed=7)
    assert a.shape == (1000, 4)
    assert np.array_equal(a, b)
    assert np.allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-12)


def test_regular_simplex_gram():
    v = smw.regular_simplex(4)
    gram = v @ v.T
    off = gram[~np.eye(5, dtype=bool)]
    assert np.allclose(off, -0.25, atol=1e-12)
    assert smw.covers_sphere(v)
    assert smw.regularity_distance(v) < 1e-9


def test_support_and_voronoi():
    v = smw.regular_simplex(3)
    assert smw.support(v, v[0]) == pytest.approx(1.0)
    assert smw.voronoi_assign(v, v[2]) == 2
    centers = smw.circumcenters(v)
    assert np.allclose(centers, -v, atol=1e-9)


def test_mean_width_segment_anchor():
    segment = np.array([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    est = smw.mean_width_mc(segment, 200_000, seed=5, test_mode=True)
    assert est["value"] == pytest.approx(1.0, abs=4 * est["std_error"])

    report = smw.mean_width_cells(smw.regular_simplex(3), 200_000, seed=6)
    assert report["total"]["value"] == pytest.approx(1.4897, abs=0.01)
    assert sum(report["cell_measures"]) == pytest.approx(1.0)


def test_shear_group_law():
    x = smw.project(np.array([0.3, -0.5, 0.8]))
    left = smw.shear_apply(0.7, smw.shear_apply(0.4, x))
    right = smw.shear_apply(1.1, x)
    assert np.allclose(left, right, atol=1e-12)
    assert smw.shear_jacobian(0.0, x) == pytest.approx(1.0)
    assert smw.pushforward_density(0.3, x) == pytest.approx(smw.shear_jacobian(-0.3, x))


def test_centroid_of_hemisphere():
    est = smw.centroid(3, lambda x: x[0] >= 0.0, 200_000, seed=9, hemisphere_safe=True)
    assert est["direction"][0] == pytest.approx(1.0, abs=0.01)
    assert est["measure"]["value"] == pytest.approx(0.5, abs=0.01)

    strip = smw.strip_integral(3, lambda x: x[0] >= 0.0, -1e6, 1e6, 1, 200_000, seed=10)
    assert strip["value"] == pytest.approx(0.25, abs=4 * strip["std_error"])


def test_enclosing_ball():
    center, radius = smw.min_enclosing_ball(list(smw.regular_simplex(3)))
    assert np.linalg.norm(center) < 1e-9
    assert radius == pytest.approx(1.0, abs=1e-9)


def test_inequality_tools():
    holds, concl, residual = smw.simpson_antidote([1, 4], [2, 9], [1, 2], [1, 3])
    assert holds and concl and residual < 1e-12

    assert smw.pl_constant(math.pi / 2, 5) == pytest.approx(math.cos(math.pi / 4))
    mid = smw.geodesic_combine(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), 0.5)
    assert np.allclose(mid, [1 / math.sqrt(2)] * 2 + [0.0])

    result = smw.spl_verify_circle([1.0] * 256, [1.0] * 256, 0.5, 1e-2)
    assert result["holds"]


def test_lloyd_ascend():
    start = smw.perturbed_regular_simplex(3, 0.3, seed=11)
    out = smw.ascend(start, tol=0.02, max_iters=40, n=100_000, seed=12)
    widths = [s["mean_width"]["value"] for s in out["steps"]]
    sigmas = [s["mean_width"]["std_error"] for s in out["steps"]]
    for i in range(len(widths) - 1):
        assert widths[i + 1] >= widths[i] - 3 * math.hypot(sigmas[i], sigmas[i + 1])
    assert out["steps"][-1]["regularity_distance"] < out["steps"][0]["regularity_distance"]

    ok_ball, ok_unit, ok_cover = smw.check_necessary_conditions(list(smw.regular_simplex(3)))
    assert ok_ball and ok_unit and ok_cover


def test_experiments_report():
    gens = np.array([[1.0, -0.05, 0.2], [1.0, 0.3, 0.1], [1.0, 0.1, -0.25]])
    gens /= np.linalg.norm(gens, axis=1, keepdims=True)
    record = smw.strip_ratio_experiment(gens, 0.0, 0.1, 0.15, 100_000, seed=3, test_mode=True)
    assert record["ratios"][0] == 1.0 and record["ratios"][1] == 1.0
    assert record["verdict"] in {"consistent", "violated", "inconclusive"}
