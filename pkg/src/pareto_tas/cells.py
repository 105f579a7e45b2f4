"""Enumeration of valid escape-direction maps via difference constraints.

Assigning objective j to Pareto arm k adds the constraints
lam^x - lam^j <= mu_k^x - mu_k^j for every x != j.  Such a system is feasible
iff the corresponding weighted digraph on the d objectives has no negative
cycle; we maintain its all-pairs shortest-path matrix and refresh it in
O(d^2) per added arm, so an infeasible branch of the assignment tree is
pruned as soon as it appears.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

INF = math.inf

#: Absolute slack on cycle lengths: cycles in [-FEASIBILITY_TOL, 0) count as
#: zero so boundary cells (measure-zero tesselation seams) are kept.
FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class ConstraintGraph:
    """All-pairs shortest-path matrix of a difference-constraint graph.

    dist[x][y] is the length of the shortest path from objective x to
    objective y (inf when unreachable); the diagonal stays at zero, which
    certifies the absence of a (strictly) negative cycle.
    """

    dist: tuple[tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return len(self.dist)


def empty_graph(d: int) -> ConstraintGraph:
    dist = tuple(
        tuple(0.0 if x == y else INF for y in range(d)) for x in range(d)
    )
    return ConstraintGraph(dist)


def extend(graph: ConstraintGraph, mu_row, j: int) -> ConstraintGraph | None:
    """Add the constraints of assigning objective j to an arm with means mu_row.

    Returns the updated graph, or None when the system becomes infeasible
    (a negative cycle below -FEASIBILITY_TOL shows up).  The new edges go
    from j to every other objective x with weight mu_row[x] - mu_row[j].
    """
    d = graph.n
    dist = graph.dist
    u = [mu_row[x] - mu_row[j] for x in range(d)]

    # A new negative cycle must use a fresh edge j -> x, then return to j.
    for x in range(d):
        if x == j:
            continue
        back = dist[x][j]
        if back < INF and u[x] + back < -FEASIBILITY_TOL:
            return None

    # Distances out of j: direct new edge, or new edge then old shortest path.
    from_j = list(dist[j])
    for y in range(d):
        if y == j:
            continue
        uy = u[y]
        row = dist[y]
        for x in range(d):
            cand = uy + row[x]
            if cand < from_j[x]:
                from_j[x] = cand
    from_j[j] = 0.0

    # Distances into j are unchanged; everything else may now route through j.
    new_rows = []
    for x in range(d):
        if x == j:
            new_rows.append(tuple(from_j))
            continue
        row = list(dist[x])
        through = row[j]
        if through < INF:
            for y in range(d):
                cand = through + from_j[y]
                if cand < row[y]:
                    row[y] = cand
        row[x] = 0.0
        new_rows.append(tuple(row))
    return ConstraintGraph(tuple(new_rows))


def witness_point(graph: ConstraintGraph) -> tuple[float, ...]:
    """A solution of the constraint system: shortest-path potentials from a
    virtual source tied to every objective with a zero-weight edge."""
    d = graph.n
    return tuple(
        min(0.0, min(graph.dist[y][x] for y in range(d))) for x in range(d)
    )


@dataclass(frozen=True)
class Cell:
    """A complete assignment with a non-empty solution set."""

    phi: tuple[int, ...]  # objective assigned to each Pareto arm, in order
    graph: ConstraintGraph
    witness: tuple[float, ...]


def enumerate_cells(pareto_means) -> Iterator[Cell]:
    """Yield every complete assignment phi whose cell is non-empty.

    Depth-first over the Pareto arms in their given (ascending-index) order,
    trying objectives 0..d-1 at each level; an infeasible partial assignment
    prunes its whole subtree.
    """
    rows = [list(map(float, row)) for row in pareto_means]
    if rows:
        d = len(rows[0])
    else:
        d = 1

    def walk(i: int, graph: ConstraintGraph, prefix: list[int]) -> Iterator[Cell]:
        if i == len(rows):
            yield Cell(tuple(prefix), graph, witness_point(graph))
            return
        for j in range(d):
            child = extend(graph, rows[i], j)
            if child is not None:
                prefix.append(j)
                yield from walk(i + 1, child, prefix)
                prefix.pop()

    yield from walk(0, empty_graph(d), [])


def cell_count_bound(p: int, d: int) -> int:
    """Upper bound binom(p+d-1, d-1) on the number of non-empty cells."""
    if p < 0 or d < 1:
        raise ValueError("need p >= 0 and d >= 1")
    return math.comb(p + d - 1, d - 1)
