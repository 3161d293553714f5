"""Optimizers, problem suites, statistics and the experiment runner."""

from .baselines import pso_optimize, random_search
from .dos import DosOptimizer, dos_optimize
from .runner import emit_diversity, run_battery
from .stats import build_report, rank_sum_test, summarize

__all__ = [
    "pso_optimize",
    "random_search",
    "DosOptimizer",
    "dos_optimize",
    "emit_diversity",
    "run_battery",
    "build_report",
    "rank_sum_test",
    "summarize",
]
