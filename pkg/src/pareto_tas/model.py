"""Bandit instances, the domination order and the weighted transport cost.

All oracle computations downstream run on unit-variance (rescaled) means;
`rescale_to_unit_variance` provides the forward map and the inverse used to
report minimizers in the original coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


class AltEmptyError(ValueError):
    """Raised when no alternative model exists (single-arm instance)."""


@dataclass(frozen=True)
class BanditInstance:
    """A K-arm Gaussian bandit with d independent objectives.

    means: (K, d) array of arm means.
    variances: (d,) array of per-objective variances, shared by all arms.
    """

    means: np.ndarray
    variances: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        means = np.asarray(self.means, dtype=float)
        if means.ndim != 2 or means.shape[0] < 1 or means.shape[1] < 1:
            raise ValueError("means must be a non-empty K x d matrix")
        variances = np.asarray(self.variances, dtype=float).reshape(-1)
        if variances.shape[0] != means.shape[1]:
            raise ValueError("need one variance per objective")
        if not np.all(np.isfinite(means)):
            raise ValueError("means must be finite")
        if not np.all(np.isfinite(variances)) or np.any(variances <= 0):
            raise ValueError("variances must be finite and positive")
        if self.labels is not None and len(self.labels) != means.shape[0]:
            raise ValueError("need one label per arm")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "variances", variances)
        means.setflags(write=False)
        variances.setflags(write=False)

    @property
    def n_arms(self) -> int:
        return self.means.shape[0]

    @property
    def n_objectives(self) -> int:
        return self.means.shape[1]

    def to_json(self) -> str:
        payload = {
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
        }
        if self.labels is not None:
            payload["labels"] = list(self.labels)
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "BanditInstance":
        payload = json.loads(text)
        labels = payload.get("labels")
        return cls(
            means=np.array(payload["means"], dtype=float),
            variances=np.array(payload["variances"], dtype=float),
            labels=tuple(labels) if labels is not None else None,
        )


def dominates(a, b) -> bool:
    """True iff a_j <= b_j on every objective (a is weakly dominated by b)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("vectors must have equal length")
    return bool(np.all(a <= b))


def pareto_set(means) -> tuple[int, ...]:
    """Indices of arms not strictly dominated by any other arm.

    Arm k is excluded iff some arm k' has mu_k <= mu_k' componentwise with
    mu_k != mu_k'; arms with identical mean vectors are all retained.
    """
    means = np.asarray(means, dtype=float)
    keep = []
    for k in range(means.shape[0]):
        row = means[k]
        ge = np.all(means >= row, axis=1)
        ne = np.any(means != row, axis=1)
        if not np.any(ge & ne):
            keep.append(k)
    return tuple(keep)


def rescale_to_unit_variance(instance: BanditInstance):
    """Divide each objective by its standard deviation.

    Returns the rescaled means and the inverse map taking any K x d point
    matrix in rescaled space back to the original coordinates.
    """
    sigma = np.sqrt(instance.variances)
    scaled = instance.means / sigma

    def inverse(lam):
        return np.asarray(lam, dtype=float) * sigma

    return scaled, inverse


def transport_cost(mu, lam, w) -> float:
    """Weighted squared transport cost sum_k (w_k/2) ||mu_k - lam_k||^2.

    Both point sets must live in unit-variance coordinates.
    """
    mu = np.asarray(mu, dtype=float)
    lam = np.asarray(lam, dtype=float)
    w = np.asarray(w, dtype=float)
    return float(0.5 * np.dot(w, np.sum((mu - lam) ** 2, axis=1)))
