"""Pareto front identification for Gaussian multi-objective bandits."""

from .add import AddCandidate, best_addition, best_addition_2d, minimize_h
from .cells import (
    Cell,
    ConstraintGraph,
    cell_count_bound,
    enumerate_cells,
    extend,
)
from .data import covid_instance
from .learner import LearnerConfig, RunRecord, run, solve_t_star
from .model import (
    AltEmptyError,
    BanditInstance,
    dominates,
    pareto_set,
    rescale_to_unit_variance,
    transport_cost,
)
from .oracle import (
    AddWitness,
    RemoveWitness,
    TransportResult,
    min_alt_cost,
    supergradient_check,
)
from .remove import RemoveCandidate, best_removal, best_removal_2d, remove_cost

__all__ = [
    "AddCandidate",
    "AddWitness",
    "AltEmptyError",
    "BanditInstance",
    "Cell",
    "ConstraintGraph",
    "LearnerConfig",
    "RemoveCandidate",
    "RemoveWitness",
    "RunRecord",
    "TransportResult",
    "best_addition",
    "best_addition_2d",
    "best_removal",
    "best_removal_2d",
    "cell_count_bound",
    "covid_instance",
    "dominates",
    "enumerate_cells",
    "extend",
    "min_alt_cost",
    "minimize_h",
    "pareto_set",
    "remove_cost",
    "rescale_to_unit_variance",
    "run",
    "solve_t_star",
    "supergradient_check",
    "transport_cost",
]

__version__ = "0.1.0"
