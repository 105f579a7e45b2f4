"""Embedded instances and random instance generators."""

from __future__ import annotations

import numpy as np

from .model import BanditInstance

# Third-dose Covid vaccine immunogenicity study: 20 prime/booster schedules,
# three responses (anti-spike IgG, NT50, cellular response), with the pooled
# per-trait variances.  The two m1273 schedules form the Pareto front.
_COVID_ROWS = [
    ("BNT/ChAd", 9.5, 6.86, 4.56),
    ("BNT/NVX", 9.29, 6.64, 4.04),
    ("BNT/NVX Half", 9.05, 6.41, 3.56),
    ("BNT/BNT", 10.21, 7.49, 4.43),
    ("BNT/BNT Half", 10.05, 7.2, 4.36),
    ("BNT/VLA", 8.34, 5.67, 3.51),
    ("BNT/VLA Half", 8.22, 5.46, 3.64),
    ("BNT/Ad26", 9.75, 7.21, 4.71),
    ("BNT/m1273", 10.43, 7.61, 4.72),
    ("BNT/CVn", 8.94, 6.19, 3.84),
    ("ChAd/ChAd", 7.81, 5.26, 3.97),
    ("ChAd/NVX", 8.85, 6.59, 4.73),
    ("ChAd/NVX Half", 8.44, 6.15, 4.59),
    ("ChAd/BNT", 9.93, 7.39, 4.75),
    ("ChAd/BNT Half", 8.71, 7.2, 4.91),
    ("ChAd/VLA", 7.51, 5.31, 3.96),
    ("ChAd/VLA Half", 7.27, 4.99, 4.02),
    ("ChAd/Ad26", 8.62, 6.33, 4.66),
    ("ChAd/m1273", 10.35, 7.77, 5.0),
    ("ChAd/CVn", 8.29, 5.92, 3.87),
]
_COVID_VARIANCES = (0.70, 0.83, 1.54)


def covid_instance() -> BanditInstance:
    return BanditInstance(
        means=np.array([row[1:] for row in _COVID_ROWS]),
        variances=np.array(_COVID_VARIANCES),
        labels=tuple(row[0] for row in _COVID_ROWS),
    )


EMBEDDED = {"covid": covid_instance}


def sphere_quadrant_instance(p: int, d: int, seed: int) -> BanditInstance:
    """p points on the all-positive quadrant of the unit d-sphere plus the
    origin; the sphere points are all Pareto optimal, the origin never is."""
    rng = np.random.default_rng(seed)
    pts = np.abs(rng.standard_normal((p, d)))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    means = np.vstack([pts, np.zeros(d)])
    return BanditInstance(means=means, variances=np.ones(d))


def staircase_2d_instance(p: int, seed: int) -> BanditInstance:
    """p points forming a strict 2D Pareto staircase in a 10 x 10 square,
    plus a dominated point at the origin."""
    rng = np.random.default_rng(seed)
    xs = np.sort(rng.uniform(0.5, 10.0, size=p))
    ys = np.sort(rng.uniform(0.5, 10.0, size=p))[::-1]
    means = np.vstack([np.column_stack([xs, ys]), np.zeros(2)])
    return BanditInstance(means=means, variances=np.ones(2))


def random_instance(K: int, d: int, seed: int, low: float = 0.0,
                    high: float = 10.0) -> BanditInstance:
    rng = np.random.default_rng(seed)
    return BanditInstance(
        means=rng.uniform(low, high, size=(K, d)), variances=np.ones(d)
    )
