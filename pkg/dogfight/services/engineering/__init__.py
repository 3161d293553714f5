"""Constrained real-world engineering problems R1..R10."""

from .base import ConstrainedProblem, feasibility_report, penalized_objective, snap_discrete
from .catalog import PROBLEM_CATALOG, available_problems, evaluate_raw, make_problem
from .windfarm import PowerModel, SectorWeibullPowerModel

__all__ = [
    "ConstrainedProblem",
    "feasibility_report",
    "penalized_objective",
    "snap_discrete",
    "PROBLEM_CATALOG",
    "available_problems",
    "evaluate_raw",
    "make_problem",
    "PowerModel",
    "SectorWeibullPowerModel",
]
