"""Minimal transport cost to any model with a different Pareto front.

The alternative set is covered by the remove pieces (one Pareto arm shadows
another) and the add pieces (a non-Pareto arm escapes every Pareto arm);
the oracle takes the cheaper branch and reports the per-arm divergence
vector, which is a supergradient of the concave value in w.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .add import best_addition, best_addition_2d
from .model import (
    AltEmptyError,
    BanditInstance,
    pareto_set,
    rescale_to_unit_variance,
)
from .remove import best_removal, best_removal_2d


@dataclass(frozen=True)
class RemoveWitness:
    k0: int  # shadowed arm
    k1: int  # shadowing arm


@dataclass(frozen=True)
class AddWitness:
    k0: int  # escaping arm
    phi: tuple[int, ...]  # escape objectives in pareto order


Witness = Union[RemoveWitness, AddWitness]


@dataclass(frozen=True)
class TransportResult:
    cost: float
    lam: np.ndarray  # (K, d) minimizer in original coordinates
    witness: Witness
    gradient: np.ndarray  # (K,) per-arm divergences; dot(w, gradient) = cost
    pareto: tuple[int, ...]


def min_alt_cost(instance: BanditInstance, w) -> TransportResult:
    """Cheapest transport from the instance to a model with a different
    Pareto set, under allocation w (nonnegative, not necessarily normalized).

    Dispatches the 2D adjacent-pair and curve-tracking fast paths when d = 2.
    Ties between the two branches break toward removal.
    """
    if instance.n_arms == 1:
        raise AltEmptyError("a single-arm instance has no alternative model")
    w = np.asarray(w, dtype=float)
    if w.shape != (instance.n_arms,) or np.any(w < 0):
        raise ValueError("need one nonnegative weight per arm")

    scaled, inverse = rescale_to_unit_variance(instance)
    par = pareto_set(scaled)
    two_d = instance.n_objectives == 2

    rmv = (best_removal_2d if two_d else best_removal)(scaled, w, par)
    add = (best_addition_2d if two_d else best_addition)(scaled, w, par)

    use_remove = add is None or (rmv is not None and rmv.cost <= add.cost)
    lam_scaled = scaled.copy()
    if use_remove:
        lam_scaled[rmv.k0] = rmv.lambda_pair[0]
        lam_scaled[rmv.k1] = rmv.lambda_pair[1]
        cost = rmv.cost
        witness: Witness = RemoveWitness(rmv.k0, rmv.k1)
    else:
        lam_scaled = add.lambda_full
        cost = add.cost
        witness = AddWitness(add.k0, add.phi)

    gradient = 0.5 * np.sum((scaled - lam_scaled) ** 2, axis=1)
    return TransportResult(
        cost=float(cost),
        lam=inverse(lam_scaled),
        witness=witness,
        gradient=gradient,
        pareto=par,
    )


def supergradient_check(instance: BanditInstance, w, direction, step: float = 1e-5):
    """Analytic directional derivative vs a central finite difference.

    Returns the (analytic, numeric) pair for assertion by tests; w must stay
    nonnegative at w +/- step * direction.
    """
    w = np.asarray(w, dtype=float)
    direction = np.asarray(direction, dtype=float)
    analytic = float(np.dot(min_alt_cost(instance, w).gradient, direction))
    hi = min_alt_cost(instance, w + step * direction).cost
    lo = min_alt_cost(instance, w - step * direction).cost
    return analytic, (hi - lo) / (2.0 * step)
