"""Shared primitives: problem abstraction, budgets, clamping, randomness, errors."""

from .errors import (
    BudgetError,
    ConfigurationError,
    DimensionMismatchError,
    DogfightError,
    HistoryMissingError,
    OutOfBoundsError,
    UnknownNameError,
)
from .evaluation import Evaluator
from .primitives import (
    budget_for_dimension,
    clamp_to_bounds,
    derive_run_seed,
    round_half_up,
    seeded_rng,
)
from .problem import Problem

__all__ = [
    "BudgetError",
    "ConfigurationError",
    "DimensionMismatchError",
    "DogfightError",
    "HistoryMissingError",
    "OutOfBoundsError",
    "UnknownNameError",
    "Evaluator",
    "budget_for_dimension",
    "clamp_to_bounds",
    "derive_run_seed",
    "round_half_up",
    "seeded_rng",
    "Problem",
]
