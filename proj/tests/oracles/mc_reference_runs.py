#!/usr/bin/env python3
"""High-sample Monte Carlo reference runs for the shear-strip experiments,
independent of the C++ library (numpy PCG64 generator, n = 1e8).

Rewrites the matching entries of tests/data/preregistered.json:
  * strip_ratio: shear-vs-identity ratio of strip integrals for the reference
    triangle on S^2 and for its x2-symmetric variant,
  * centroid_uniqueness: centroid slope of the sheared reference simplex on
    S^3 for a sweep of shear parameters.
"""
import json
import math
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data", "preregistered.json")

N_TOTAL = 100_000_000
CHUNK = 4_000_000
SEED = 20260808

TRIANGLE_RAW = [
    [1.00, -0.05, 0.20],
    [1.00, 0.30, 0.10],
    [1.00, 0.10, -0.25],
]
SYM_TRIANGLE_RAW = [
    [1.00, 0.30, 0.15],
    [1.00, -0.30, 0.15],
    [1.00, 0.00, -0.20],
]
# Reference spherical simplex on S^3: three generators on the equator
# {x1 = 0}, one tilted toward e1.
SIMPLEX4_RAW = [
    [0.00, 1.00, 0.20, 0.10],
    [0.00, -0.20, 1.00, 0.30],
    [0.00, 0.10, -0.30, 1.00],
    [1.00, 0.20, 0.30, -0.20],
]


def normalized(rows):
    a = np.asarray(rows, dtype=float)
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def cone_basis_inverse(gen_rows):
    # columns of G are the generators; coordinates are inv(G) @ x
    g = np.asarray(gen_rows, dtype=float).T
    return np.linalg.inv(g)


def sphere_chunks(d, n_total, chunk, seed):
    rng = np.random.default_rng(seed)
    remaining = n_total
    while remaining > 0:
        m = min(chunk, remaining)
        x = rng.standard_normal((m, d))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        yield x
        remaining -= m


def strip_ratio_run(gen_rows, s, t1, t2, n_total, seed):
    """Integrals of x1 over four strip sets, with delta-method errors.

    y1 = sheared region, earlier strip    [t1-s, t2-s)
    y2 = plain region,   earlier strip
    y3 = sheared region, later strip      [t1, t2)
    y4 = plain region,   later strip
    ratio difference  g = y3/y4 - y1/y2  (positive favours the shear)
    """
    ginv = cone_basis_inverse(normalized(gen_rows))
    sums = np.zeros(4)
    prods = np.zeros((4, 4))
    for x in sphere_chunks(3, n_total, CHUNK, seed):
        pulled = x.copy()
        pulled[:, 1] -= s * pulled[:, 0]        # M_{-s} x, scaling-free membership
        in_plain = np.all(x @ ginv.T >= 0.0, axis=1)
        in_shear = np.all(pulled @ ginv.T >= 0.0, axis=1)
        pos = x[:, 0] > 1e-12
        t = np.where(pos, x[:, 1] / np.where(pos, x[:, 0], 1.0), 0.0)
        early = pos & (t >= t1 - s) & (t < t2 - s)
        late = pos & (t >= t1) & (t < t2)
        y = np.stack([
            np.where(in_shear & early, x[:, 0], 0.0),
            np.where(in_plain & early, x[:, 0], 0.0),
            np.where(in_shear & late, x[:, 0], 0.0),
            np.where(in_plain & late, x[:, 0], 0.0),
        ], axis=1)
        sums += y.sum(axis=0)
        prods += y.T @ y
    n = float(n_total)
    mean = sums / n
    cov = (prods / n - np.outer(mean, mean)) / n   # covariance of the means
    ints = mean
    r_early = ints[0] / ints[1]
    r_late = ints[2] / ints[3]
    grad = np.array([
        -1.0 / ints[1],
        ints[0] / ints[1] ** 2,
        1.0 / ints[3],
        -ints[2] / ints[3] ** 2,
    ])
    gap = r_late - r_early
    gap_sigma = math.sqrt(max(0.0, grad @ cov @ grad))

    def ratio_sigma(inum, iden):
        g = np.zeros(4)
        g[inum] = 1.0 / ints[iden]
        g[iden] = -ints[inum] / ints[iden] ** 2
        return math.sqrt(max(0.0, g @ cov @ g))

    if gap > 3.0 * gap_sigma:
        verdict = "consistent"
    elif gap < -3.0 * gap_sigma:
        verdict = "violated"
    else:
        verdict = "inconclusive"
    return {
        "generators": normalized(gen_rows).tolist(),
        "s": s,
        "t1": t1,
        "t2": t2,
        "n": n_total,
        "seed": seed,
        "integrals": ints.tolist(),
        "integral_std_errors": np.sqrt(np.diag(cov)).tolist(),
        "ratios": [r_early, r_late],
        "ratio_std_errors": [ratio_sigma(0, 1), ratio_sigma(2, 3)],
        "gap": gap,
        "gap_std_error": gap_sigma,
        "verdict": verdict,
    }


def centroid_uniqueness_run(gen_rows, s_values, n_total, seed):
    ginv = cone_basis_inverse(normalized(gen_rows))
    k = len(s_values)
    sums = np.zeros((k, 2))
    prods = np.zeros((k, 2, 2))
    counts = np.zeros(k, dtype=np.int64)
    for x in sphere_chunks(4, n_total, CHUNK, seed):
        for i, s in enumerate(s_values):
            pulled = x.copy()
            pulled[:, 1] -= s * pulled[:, 0]
            inside = np.all(pulled @ ginv.T >= 0.0, axis=1)
            y = x[inside][:, :2]
            sums[i] += y.sum(axis=0)
            prods[i] += y.T @ y
            counts[i] += y.shape[0]
    n = float(n_total)
    slopes, sigmas = [], []
    for i in range(k):
        mean = sums[i] / n
        cov = (prods[i] / n - np.outer(mean, mean)) / n
        slope = mean[1] / mean[0]
        grad = np.array([-mean[1] / mean[0] ** 2, 1.0 / mean[0]])
        slopes.append(float(slope))
        sigmas.append(float(math.sqrt(max(0.0, grad @ cov @ grad))))
    increasing = all(
        slopes[i + 1] - slopes[i] > 3.0 * math.hypot(sigmas[i + 1], sigmas[i])
        for i in range(k - 1)
    )
    return {
        "generators": normalized(gen_rows).tolist(),
        "s_values": list(s_values),
        "n": n_total,
        "seed": seed,
        "slopes": slopes,
        "slope_std_errors": sigmas,
        "acceptance_rates": (counts / n).tolist(),
        "verdict": "increasing" if increasing else "not-increasing",
    }


def main():
    doc = {}
    try:
        with open(DATA) as f:
            doc = json.load(f)
    except FileNotFoundError:
        pass

    runs = [
        strip_ratio_run(TRIANGLE_RAW, 0.1, 0.2, 0.25, N_TOTAL, SEED),
        strip_ratio_run(SYM_TRIANGLE_RAW, 0.1, -0.025, 0.025, N_TOTAL, SEED + 1),
    ]
    doc["strip_ratio"] = runs
    for r in runs:
        print("strip ratio:", r["ratios"], "gap", r["gap"], "+/-", r["gap_std_error"], r["verdict"])

    uq = centroid_uniqueness_run(SIMPLEX4_RAW, [0.0, 0.05, 0.1, 0.2], N_TOTAL, SEED + 2)
    doc["centroid_uniqueness"] = uq
    print("uniqueness slopes:", uq["slopes"], uq["verdict"])

    with open(DATA, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
