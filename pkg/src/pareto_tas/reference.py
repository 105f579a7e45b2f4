"""Deliberately slow brute-force anchors used as independent test oracles.

Nothing here belongs on a hot path: the exhaustive map enumeration embraces
the d^p blow-up the fast oracle exists to avoid, and feasibility goes through
plain Bellman-Ford on the accumulated edge list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .add import minimize_h
from .remove import remove_cost


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleReport:
    cost: float
    argmin: object
    method: str


def exhaustive_add(mu, w, pareto, budget: int = 10**6) -> OracleReport:
    """Min over all d^p maps and all k0 outside the Pareto set; no pruning."""
    mu = np.asarray(mu, dtype=float)
    w = np.asarray(w, dtype=float)
    pareto = list(pareto)
    others = [k for k in range(mu.shape[0]) if k not in set(pareto)]
    p = len(pareto)
    d = mu.shape[1]
    if d**p > budget:
        raise BudgetExceeded(f"d^p = {d**p} exceeds budget {budget}")
    if not others:
        return OracleReport(float("inf"), None, "exhaustive_add")
    best = (float("inf"), None)
    for phi in itertools.product(range(d), repeat=p):
        for k0 in others:
            cost = 0.0
            lam0 = []
            for j in range(d):
                pairs = sorted(
                    (mu[pareto[i], j], float(w[pareto[i]]))
                    for i in range(p)
                    if phi[i] == j
                )
                lam, val = minimize_h(
                    mu[k0, j],
                    float(w[k0]),
                    [x for x, _ in pairs],
                    [wt for _, wt in pairs],
                )
                cost += val
                lam0.append(lam)
            if cost < best[0]:
                best = (cost, (k0, phi, tuple(lam0)))
    return OracleReport(best[0], best[1], "exhaustive_add")


def exhaustive_remove(mu, w, pareto) -> OracleReport:
    """Min of the pair closed form over all ordered Pareto pairs."""
    pareto = list(pareto)
    best = (float("inf"), None)
    for k0 in pareto:
        for k1 in pareto:
            if k0 == k1:
                continue
            cand = remove_cost(mu, w, k0, k1)
            if cand.cost < best[0]:
                best = (cand.cost, (k0, k1))
    return OracleReport(best[0], best[1], "exhaustive_remove")


def exhaustive_min_alt(mu, w, pareto) -> OracleReport:
    """Reference for the full oracle: all ordered pairs plus all d^p maps."""
    rmv = exhaustive_remove(mu, w, pareto)
    add = exhaustive_add(mu, w, pareto)
    return rmv if rmv.cost <= add.cost else add


def bellman_ford_feasible(edges, n: int, tol: float = 0.0) -> bool:
    """True iff the difference-constraint edge list has no negative cycle.

    edges: iterable of (src, dst, weight) encoding lam_dst - lam_src <= weight.
    """
    edges = list(edges)
    if len(edges) > 10**4:
        raise BudgetExceeded("edge list too large")
    dist = [0.0] * n
    for _ in range(n):
        changed = False
        for a, b, v in edges:
            if dist[a] + v < dist[b] - 1e-15:
                dist[b] = dist[a] + v
                changed = True
        if not changed:
            return True
    for a, b, v in edges:
        if dist[a] + v < dist[b] - max(tol, 1e-12):
            return False
    return True


def grid_minimize_g(mu, w, k0, pareto, box, step: float) -> OracleReport:
    """Dense lattice minimization of g_{k0} straight from its min_j form."""
    mu = np.asarray(mu, dtype=float)
    w = np.asarray(w, dtype=float)
    pareto = list(pareto)
    d = mu.shape[1]
    axes = [np.arange(lo, hi + step / 2, step) for lo, hi in box]
    npoints = int(np.prod([len(a) for a in axes]))
    if npoints > 10**8:
        raise BudgetExceeded(f"{npoints} grid points")
    P = mu[pareto]
    pw = w[list(pareto)]
    best = (float("inf"), None)
    for point in itertools.product(*axes):
        lam0 = np.array(point)
        cost = 0.5 * float(w[k0]) * float(np.sum((mu[k0] - lam0) ** 2))
        gaps = np.maximum(P - lam0, 0.0)
        cost += 0.5 * float(np.dot(pw, np.min(gaps, axis=1) ** 2))
        if cost < best[0]:
            best = (cost, tuple(lam0))
    return OracleReport(best[0], best[1], "grid_minimize_g")


def eval_g(mu, w, k0, pareto, lam0) -> float:
    """g_{k0}(lam0) from its min_j definition."""
    mu = np.asarray(mu, dtype=float)
    lam0 = np.asarray(lam0, dtype=float)
    pareto = list(pareto)
    P = mu[pareto]
    pw = np.asarray(w, dtype=float)[pareto]
    cost = 0.5 * float(w[k0]) * float(np.sum((mu[k0] - lam0) ** 2))
    gaps = np.maximum(P - lam0, 0.0)
    return cost + 0.5 * float(np.dot(pw, np.min(gaps, axis=1) ** 2))
