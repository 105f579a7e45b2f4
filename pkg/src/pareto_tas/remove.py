"""Cheapest way to make one Pareto arm dominate another.

The cost of shadowing arm k0 by arm k1 has the closed form
(1/2) * w_k0 w_k1 / (w_k0 + w_k1) * sum_j (mu_k0^j - mu_k1^j)_+^2,
with both arms meeting at the weighted average on every inverted objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RemoveCandidate:
    k0: int  # arm that ends up dominated
    k1: int  # arm that ends up dominating
    cost: float
    lambda_pair: np.ndarray  # (2, d): new positions for k0 then k1


def remove_cost(mu, w, k0: int, k1: int) -> RemoveCandidate:
    """Minimal transport cost for arm k1 to weakly dominate arm k0.

    Runs in O(d). The zero-weight pair w_k0 + w_k1 = 0 is defined as cost 0
    with no movement (limit of the harmonic factor).
    """
    if k0 == k1:
        raise ValueError("need two distinct arms")
    mu = np.asarray(mu, dtype=float)
    a, b = mu[k0].copy(), mu[k1].copy()
    wa, wb = float(w[k0]), float(w[k1])
    total = wa + wb
    if total <= 0.0:
        return RemoveCandidate(k0, k1, 0.0, np.stack([a, b]))
    harmonic = wa * wb / total
    gaps = a - b
    cost = 0.0
    for j in range(mu.shape[1]):
        if gaps[j] > 0.0:
            cost += 0.5 * harmonic * gaps[j] ** 2
            meet = (wa * a[j] + wb * b[j]) / total
            a[j] = meet
            b[j] = meet
    return RemoveCandidate(k0, k1, cost, np.stack([a, b]))


def best_removal(mu, w, pareto) -> RemoveCandidate | None:
    """Minimum of remove_cost over all ordered pairs of Pareto arms, O(p^2 d)."""
    pareto = list(pareto)
    if len(pareto) < 2:
        return None
    best = None
    for k0 in pareto:
        for k1 in pareto:
            if k0 == k1:
                continue
            cand = remove_cost(mu, w, k0, k1)
            if best is None or cand.cost < best.cost:
                best = cand
    return best


def best_removal_2d(mu, w, pareto) -> RemoveCandidate | None:
    """Adjacent-pair scan over the 2D Pareto staircase, O(p) after sorting.

    Only pairs adjacent in the staircase (sorted by objective 1) can achieve
    the minimum; falls back to the generic scan when the staircase is not
    strict (duplicate arms).
    """
    mu = np.asarray(mu, dtype=float)
    if mu.shape[1] != 2:
        raise ValueError("best_removal_2d requires d = 2")
    pareto = list(pareto)
    if len(pareto) < 2:
        return None
    order = sorted(pareto, key=lambda k: (mu[k, 0], -mu[k, 1]))
    firsts = [mu[k, 0] for k in order]
    if any(firsts[i] == firsts[i + 1] for i in range(len(firsts) - 1)):
        return best_removal(mu, w, pareto)
    best = None
    for a, b in zip(order, order[1:]):
        for k0, k1 in ((a, b), (b, a)):
            cand = remove_cost(mu, w, k0, k1)
            if best is None or cand.cost < best.cost:
                best = cand
    return best
