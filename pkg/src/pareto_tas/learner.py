"""Track-and-Stop learner: Hedge ascent sampling, GLR stopping, and the
offline characteristic-time solver.

The sampling rule tracks the running average of the Hedge iterates
(C-tracking) with forced exploration whenever some arm's count drops below
sqrt(t) - K/2.  The stopping statistic is t times the minimal transport cost
from the empirical means under the empirical allocation, compared against
the stylized threshold ln(ln(1+t)/delta).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .model import BanditInstance, pareto_set
from .oracle import min_alt_cost


@dataclass(frozen=True)
class LearnerConfig:
    delta: float = 0.1
    gradient_period: int = 10
    stopping_period: int = 25
    max_steps: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.gradient_period < 1 or self.stopping_period < 1:
            raise ValueError("periods must be >= 1")


@dataclass
class LearnerState:
    t: int
    counts: np.ndarray  # (K,) pull counts
    sums: np.ndarray  # (K, d) reward sums
    hedge_weights: np.ndarray  # (K,) simplex point
    hedge_log: np.ndarray  # (K,) unnormalized log weights
    weight_avg_sum: np.ndarray  # (K,) sum of hedge iterates over steps
    grad_norm_acc: float = 0.0
    last_oracle: object = None


def init_state(K: int, d: int) -> LearnerState:
    return LearnerState(
        t=0,
        counts=np.zeros(K, dtype=np.int64),
        sums=np.zeros((K, d)),
        hedge_weights=np.full(K, 1.0 / K),
        hedge_log=np.zeros(K),
        weight_avg_sum=np.zeros(K),
    )


@dataclass(frozen=True)
class RunRecord:
    tau: int
    answer: tuple[int, ...]
    correct: bool
    counts: np.ndarray
    wall_time: float
    aborted: bool = False


def choose_arm(state: LearnerState) -> int:
    """Forced exploration of undersampled arms, else cumulative tracking."""
    K = state.counts.shape[0]
    threshold = math.sqrt(state.t) - K / 2.0
    starved = np.flatnonzero(state.counts < threshold)
    if starved.size:
        return int(starved[np.argmin(state.counts[starved])])
    # t * wbar_k - N_k with wbar the running average of Hedge iterates.
    return int(np.argmax(state.weight_avg_sum - state.counts))


def hedge_update(state: LearnerState, gradient) -> np.ndarray:
    """One multiplicative-weights step with gradient-norm-adaptive rate."""
    g = np.asarray(gradient, dtype=float)
    if not np.all(np.isfinite(g)) or np.any(g < 0):
        raise ValueError("gradient entries must be finite and nonnegative")
    K = g.shape[0]
    state.grad_norm_acc += float(np.max(g)) ** 2 if g.size else 0.0
    eta = math.sqrt(math.log(K) / (1.0 + state.grad_norm_acc))
    state.hedge_log += eta * g
    shifted = state.hedge_log - np.max(state.hedge_log)
    weights = np.exp(shifted)
    weights /= weights.sum()
    state.hedge_weights = weights
    return weights


class NotReady(Exception):
    """Stopping statistic undefined before every arm has been sampled."""


def stopping_statistic(state: LearnerState, instance_estimate: BanditInstance,
                       delta: float):
    """GLR statistic Z(t) and its threshold ln(ln(1+t)/delta)."""
    if np.any(state.counts == 0):
        raise NotReady
    z = min_alt_cost(instance_estimate, state.counts.astype(float)).cost
    threshold = math.log(math.log(1.0 + state.t) / delta)
    return z, threshold


def run(instance: BanditInstance, config: LearnerConfig) -> RunRecord:
    """One seeded identification run against the ground-truth instance."""
    K, d = instance.n_arms, instance.n_objectives
    if K < 2:
        raise ValueError("need at least two arms")
    rng = np.random.default_rng(config.seed)
    sigma = np.sqrt(instance.variances)
    truth = pareto_set(instance.means)
    state = init_state(K, d)
    start = time.perf_counter()

    stopped = False
    while state.t < config.max_steps:
        arm = choose_arm(state)
        reward = instance.means[arm] + sigma * rng.standard_normal(d)
        state.counts[arm] += 1
        state.sums[arm] += reward
        state.t += 1
        state.weight_avg_sum += state.hedge_weights

        ready = bool(np.all(state.counts > 0))
        if ready and state.t % config.gradient_period == 0:
            estimate = BanditInstance(
                means=state.sums / state.counts[:, None],
                variances=instance.variances,
            )
            state.last_oracle = min_alt_cost(estimate, state.hedge_weights)
        # one ascent step per sample, on the most recent (possibly stale)
        # gradient; the oracle itself is only refreshed every G samples
        if state.last_oracle is not None:
            hedge_update(state, state.last_oracle.gradient)
        if ready and state.t % config.stopping_period == 0:
            estimate = BanditInstance(
                means=state.sums / state.counts[:, None],
                variances=instance.variances,
            )
            z, threshold = stopping_statistic(state, estimate, config.delta)
            if z > threshold:
                stopped = True
                break

    means_hat = state.sums / np.maximum(state.counts[:, None], 1)
    answer = pareto_set(means_hat)
    return RunRecord(
        tau=state.t,
        answer=answer,
        correct=answer == truth,
        counts=state.counts.copy(),
        wall_time=time.perf_counter() - start,
        aborted=not stopped,
    )


@dataclass(frozen=True)
class CharacteristicResult:
    t_star: float
    w_star: np.ndarray
    value: float
    upper_bound: float
    converged: bool
    iterations: int


def solve_t_star(instance: BanditInstance, iterations: int = 20000,
                 tolerance: float = 1e-3) -> CharacteristicResult:
    """Offline sup_w inf_lambda solve by adaptive Hedge ascent on the true
    means.  Returns T* = 1/value at the averaged iterate; convergence is
    certified by the concavity gap between the best value and the smallest
    max-gradient upper bound.
    """
    K = instance.n_arms
    state = init_state(K, instance.n_objectives)
    upper = math.inf
    lower = -math.inf
    avg = np.zeros(K)
    count = 0
    converged = False
    it = 0
    for it in range(1, iterations + 1):
        w = state.hedge_weights
        result = min_alt_cost(instance, w)
        lower = max(lower, result.cost)
        upper = min(upper, float(np.max(result.gradient)))
        hedge_update(state, result.gradient)
        # Tail-average the iterates: drop the transient first half.
        if 2 * it >= iterations:
            avg += w
            count += 1
        if upper - lower <= tolerance * upper and 2 * it >= iterations:
            converged = True
            break
    w_star = avg / count if count else state.hedge_weights
    value = min_alt_cost(instance, w_star).cost
    value = max(value, lower)
    return CharacteristicResult(
        t_star=1.0 / value,
        w_star=w_star,
        value=value,
        upper_bound=upper,
        converged=converged or upper - lower <= tolerance * upper,
        iterations=it,
    )
