"""Typed schemas for problems, parameters, experiments and reports."""

from .engineering import DiscreteSpec, ProblemInfo, WindPowerConfig
from .experiment import AlgorithmSpec, ExperimentConfig, ProblemKind, ProblemSelector
from .params import DosParams, PenaltyConfig, PenaltyMode, PsoParams
from .path import NoFlyZone, PathConfig, PathViolations
from .problem import Bounds, Budget, Evaluation, RunRecord
from .report import Mark, PairwiseResult, StatReport, SummaryRow

__all__ = [
    "DiscreteSpec",
    "ProblemInfo",
    "WindPowerConfig",
    "AlgorithmSpec",
    "ExperimentConfig",
    "ProblemKind",
    "ProblemSelector",
    "DosParams",
    "PenaltyConfig",
    "PenaltyMode",
    "PsoParams",
    "NoFlyZone",
    "PathConfig",
    "PathViolations",
    "Bounds",
    "Budget",
    "Evaluation",
    "RunRecord",
    "Mark",
    "PairwiseResult",
    "StatReport",
    "SummaryRow",
]
