"""Cheapest way to free a non-Pareto arm from every Pareto arm's shadow.

For a fixed assignment phi of escape objectives the objective separates per
dimension into
    h_j(x) = (w0/2)(mu0^j - x)^2 + sum_{k in phi^-1(j)} (w_k/2)(mu_k^j - x)_+^2,
each minimized by a single left-to-right scan over suffix-weighted averages.
The global minimum ranges over the non-empty cells enumerated by
`pareto_tas.cells`.  In two dimensions the cells line up along the
anti-diagonal, and tracking the piecewise-linear optimal offset curve solves
all cells in one sweep per candidate arm.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .cells import Cell, enumerate_cells


@dataclass(frozen=True)
class AddCandidate:
    k0: int  # non-Pareto arm being freed
    cost: float
    lambda0: np.ndarray  # (d,): new location of arm k0
    phi: tuple[int, ...]  # escape objective per Pareto arm, in pareto order
    lambda_full: np.ndarray  # (K, d) full minimizer


_SQ2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# per-dimension scan


def _prep_group(xs, ws):
    """Suffix sums for a sorted group; shared across every candidate arm."""
    m = len(xs)
    sw = [0.0] * (m + 1)
    sx = [0.0] * (m + 1)
    sxx = [0.0] * (m + 1)
    for i in range(m - 1, -1, -1):
        sw[i] = sw[i + 1] + ws[i]
        sx[i] = sx[i + 1] + ws[i] * xs[i]
        sxx[i] = sxx[i + 1] + ws[i] * xs[i] * xs[i]
    return xs, sw, sx, sxx


def _minimize_prepped(prep, mu0: float, w0: float):
    xs, sw, sx, sxx = prep
    m = len(xs)
    if w0 <= 0.0:
        if sw[0] <= 0.0:
            return mu0, 0.0
        return xs[-1], 0.0
    # Stationary point in [x_k, x_{k+1}] is the w0/suffix weighted average;
    # exactly one interval contains its own average.
    for k in range(m + 1):
        lam = (w0 * mu0 + sx[k]) / (w0 + sw[k])
        if k == m or lam <= xs[k]:
            val = 0.5 * w0 * (mu0 - lam) ** 2 + 0.5 * (
                sxx[k] - 2.0 * lam * sx[k] + lam * lam * sw[k]
            )
            return lam, val
    raise AssertionError("unreachable: scan always terminates at k = m")


def minimize_h(mu0: float, w0: float, xs, ws):
    """Minimize h_j for anchor (mu0, w0) over a group sorted ascending.

    Returns (minimizer, value).  With every weight zero the function is
    constant and the anchor point is returned.
    """
    xs = list(map(float, xs))
    ws = list(map(float, ws))
    if any(xs[i] > xs[i + 1] for i in range(len(xs) - 1)):
        raise ValueError("group must be sorted ascending")
    return _minimize_prepped(_prep_group(xs, ws), float(mu0), float(w0))


# ---------------------------------------------------------------------------
# generic path


class SortedColumns:
    """Per-objective ascending orderings of the Pareto means.

    Built once per oracle call; each cell filters them in O(p) to get its
    phi^-1(j) groups already sorted.
    """

    def __init__(self, pareto_means):
        P = np.asarray(pareto_means, dtype=float)
        self.P = P
        self.order = [np.argsort(P[:, j], kind="stable") for j in range(P.shape[1])]


def cell_groups(cell: Cell, columns: SortedColumns, pareto_weights):
    """Sorted (values, weights) of phi^-1(j) for each objective j."""
    P = columns.P
    d = P.shape[1]
    groups = []
    for j in range(d):
        xs, ws = [], []
        for i in columns.order[j]:
            if cell.phi[i] == j:
                xs.append(P[i, j])
                ws.append(pareto_weights[i])
        groups.append(_prep_group(xs, ws))
    return groups


def minimize_in_cell(cell: Cell, columns: SortedColumns, pareto_weights,
                     mu0, w0: float):
    """Unconstrained minimum of g_{k0,phi} for one cell: independent h_j solves.

    Returns (cost, lambda0).
    """
    groups = cell_groups(cell, columns, pareto_weights)
    return _minimize_groups(groups, mu0, w0)


def _minimize_groups(groups, mu0, w0):
    cost = 0.0
    lam0 = []
    for j, prep in enumerate(groups):
        lam, val = _minimize_prepped(prep, float(mu0[j]), w0)
        cost += val
        lam0.append(lam)
    return cost, np.array(lam0)


def _assemble(mu, pareto, k0, lam0, phi) -> np.ndarray:
    """Full K x d minimizer: each Pareto arm yields on its phi objective only
    when it still exceeds lambda0 there, realizing the positive parts of g."""
    mu = np.asarray(mu, dtype=float)
    lam = mu.copy()
    lam[k0] = lam0
    for i, k in enumerate(pareto):
        j = phi[i]
        if mu[k, j] > lam0[j]:
            lam[k, j] = lam0[j]
    return lam


def best_addition(mu, w, pareto) -> AddCandidate | None:
    """Minimum over non-empty cells and non-Pareto arms of the cell solves."""
    mu = np.asarray(mu, dtype=float)
    w = np.asarray(w, dtype=float)
    pareto = list(pareto)
    others = [k for k in range(mu.shape[0]) if k not in set(pareto)]
    if not others:
        return None
    P = mu[pareto]
    columns = SortedColumns(P)
    pw = [float(w[k]) for k in pareto]
    best = None  # (cost, k0, lam0, phi)
    for cell in enumerate_cells(P):
        groups = cell_groups(cell, columns, pw)
        for k0 in others:
            cost, lam0 = _minimize_groups(groups, mu[k0], float(w[k0]))
            if best is None or cost < best[0]:
                best = (cost, k0, lam0, cell.phi)
    cost, k0, lam0, phi = best
    lam = _assemble(mu, pareto, k0, lam0, phi)
    return AddCandidate(k0, cost, lam0, phi, lam)


# ---------------------------------------------------------------------------
# 2D fast path

_INV_SQ2 = 1.0 / _SQ2


def best_addition_2d(mu, w, pareto) -> AddCandidate | None:
    """Same contract as best_addition for d = 2, one offset-curve sweep per arm.

    Points are reparametrized as lam0 = M s + t 1 with M = (1/sqrt2, -1/sqrt2);
    the optimal-in-t curve t*(s) is piecewise linear, its pieces delimited by
    three event kinds per Pareto arm (meet ascending branch, pass the peak,
    meet descending branch).  Each linear piece is minimized in closed form.
    """
    mu = np.asarray(mu, dtype=float)
    if mu.shape[1] != 2:
        raise ValueError("best_addition_2d requires d = 2")
    w = np.asarray(w, dtype=float)
    pareto = list(pareto)
    others = [k for k in range(mu.shape[0]) if k not in set(pareto)]
    if not others:
        return None

    P = mu[pareto]
    pw = np.array([float(w[k]) for k in pareto])
    s_all = (P[:, 0] - P[:, 1]) * _INV_SQ2
    order = np.argsort(s_all, kind="stable")
    s_arm = s_all[order]
    asc_a = P[order, 1]  # ascending-branch intercepts t_k - s_k/sqrt2
    desc_a = P[order, 0]  # descending-branch intercepts t_k + s_k/sqrt2
    w_arm = pw[order]
    p = len(pareto)

    best = None  # (cost, k0, s*, t*)
    for k0 in others:
        w0 = float(w[k0])
        m0 = mu[k0]
        if w0 <= 0.0:
            if best is None or 0.0 < best[0]:
                lam0 = np.max(P, axis=0) if p else m0.copy()
                best = (0.0, k0, None, lam0)
            continue
        s0 = (m0[0] - m0[1]) * _INV_SQ2
        t0 = 0.5 * (m0[0] + m0[1])
        res = _sweep_2d(w0, s0, t0, s_arm, asc_a, desc_a, w_arm)
        if best is None or res[0] < best[0]:
            best = (res[0], k0, res[1], res[2])

    cost, k0, s_star, extra = best
    if s_star is None:
        lam0 = extra
        s_star = (lam0[0] - lam0[1]) * _INV_SQ2
    else:
        t_star = extra
        lam0 = np.array([s_star * _INV_SQ2 + t_star, -s_star * _INV_SQ2 + t_star])
    phi_sorted = [1 if s_arm[i] >= s_star else 0 for i in range(p)]
    phi = [0] * p
    for pos, i in enumerate(order):
        phi[i] = phi_sorted[pos]
    phi = tuple(phi)
    lam = _assemble(mu, pareto, k0, lam0, phi)
    return AddCandidate(k0, cost, lam0, phi, lam)


def _sweep_2d(w0, s0, t0, s_arm, asc_a, desc_a, w_arm):
    """Track t*(s) left to right and minimize g on every linear piece.

    Returns (cost, s*, t*) of the best point on the curve.
    """
    p = len(s_arm)
    b_asc = _INV_SQ2
    b_desc = -_INV_SQ2

    # Active-set sums over K(s): S* of w, w*a, w*b, w*a^2, w*a*b (b^2 = 1/2).
    Sw = Sa = Sb = Saa = Sab = 0.0
    base_w = 2.0 * w0
    base_at = base_w * t0

    ALIVE, IN_ASC, IN_DESC, GONE = 0, 1, 2, 3
    state = [ALIVE] * p
    active = deque()
    idx_enter = 0
    ptr_peak = 0
    s_cur = -math.inf
    best_cost = math.inf
    best_s = best_t = 0.0

    def piece_min(lo, hi):
        nonlocal best_cost, best_s, best_t
        W = base_w + Sw
        A = base_at + Sa
        B = Sb
        alpha = A / W
        beta = B / W
        c2 = 0.5 * w0 + w0 * beta * beta + 0.5 * (
            0.5 * Sw - 2.0 * beta * Sb + beta * beta * Sw
        )
        c1 = -w0 * s0 + 2.0 * w0 * beta * (alpha - t0) + (
            Sab - alpha * Sb - beta * Sa + alpha * beta * Sw
        )
        c0 = 0.5 * w0 * s0 * s0 + w0 * (alpha - t0) ** 2 + 0.5 * (
            Saa - 2.0 * alpha * Sa + alpha * alpha * Sw
        )
        s = -c1 / (2.0 * c2)
        if s < lo:
            s = lo
        elif s > hi:
            s = hi
        if not math.isfinite(s):
            return
        val = (c2 * s + c1) * s + c0
        if val < best_cost:
            best_cost = val
            best_s = s
            best_t = alpha + beta * s

    def tstar_coeffs():
        W = base_w + Sw
        return (base_at + Sa) / W, Sb / W, W

    while True:
        # Candidate events: (s, priority, kind, arm). Priority orders exact
        # coincidences: ascending meets, then peaks, then descending meets.
        events = []
        alpha, beta, W = tstar_coeffs()
        if idx_enter < p:
            i = idx_enter
            a = asc_a[i]
            denom = beta - b_asc  # < 0: ascending branch always catches t*
            s_e = (a - alpha) / denom
            if s_e <= s_arm[i]:
                events.append((s_e, 0, "enter", i))
        if ptr_peak < p:
            events.append((s_arm[ptr_peak], 1, "peak", ptr_peak))
        if active and state[active[0]] == IN_DESC:
            i = active[0]
            a = desc_a[i]
            denom = beta - b_desc  # > 0
            s_x = (a - alpha) / denom
            events.append((s_x, 2, "exit", i))

        if not events:
            piece_min(s_cur, math.inf)
            break
        s_next, _, kind, i = min(events)
        if s_next < s_cur:
            s_next = s_cur
        piece_min(s_cur, s_next)
        s_cur = s_next

        wi = w_arm[i]
        if kind == "enter":
            a = asc_a[i]
            Sw += wi
            Sa += wi * a
            Sb += wi * b_asc
            Saa += wi * a * a
            Sab += wi * a * b_asc
            state[i] = IN_ASC
            active.append(i)
            idx_enter += 1
        elif kind == "peak":
            if state[i] == IN_ASC:
                a0, a1 = asc_a[i], desc_a[i]
                Sa += wi * (a1 - a0)
                Sb += wi * (b_desc - b_asc)
                Saa += wi * (a1 * a1 - a0 * a0)
                Sab += wi * (a1 * b_desc - a0 * b_asc)
                state[i] = IN_DESC
            elif state[i] == ALIVE and i == idx_enter:
                # Never rose above t*: cannot become active any more.
                state[i] = GONE
                idx_enter += 1
            ptr_peak += 1
        else:  # exit
            a = desc_a[i]
            Sw -= wi
            Sa -= wi * a
            Sb -= wi * b_desc
            Saa -= wi * a * a
            Sab -= wi * a * b_desc
            state[i] = GONE
            active.popleft()

    return best_cost, best_s, best_t
