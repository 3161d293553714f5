"""Computational-cost harness: optimizer overhead relative to a fixed arithmetic kernel."""

import logging
import math
import time

from pydantic import BaseModel

from dogfight.config import settings
from dogfight.core.primitives import seeded_rng
from dogfight.models.problem import Budget
from dogfight.services.benchmarks import make_function
from dogfight.services.dos import dos_optimize

logger = logging.getLogger(__name__)

# measured on the authors' hardware; printed for context only
REFERENCE_OVERHEAD = 97.657899


class TimingResult(BaseModel):
    t0: float
    t1: float
    t2_mean: float
    overhead: float


def arithmetic_kernel(repetitions: int, x: float = 0.55) -> float:
    """Run the fixed add/halve/square/sqrt/log/exp/ratio chain and return the final x."""
    for _ in range(repetitions):
        x = x + x
        x = x / 2.0
        x = x * x
        x = math.sqrt(x)
        x = math.log(x)
        x = math.exp(x)
        x = x / (x + 2.0)
    return x


def timing_harness(
    function: str = settings.TIMING_FUNCTION,
    dimension: int = settings.TIMING_DIMENSION,
    kernel_repetitions: int = settings.TIMING_KERNEL_REPETITIONS,
    evaluations: int = settings.TIMING_EVALUATIONS,
    dos_repetitions: int = settings.TIMING_DOS_REPETITIONS,
    seed: int = settings.DEFAULT_ROOT_SEED,
) -> TimingResult:
    """
    Measure T0 (kernel), T1 (bare evaluations) and mean T2 (full DoS runs).

    Args:
        function: Benchmark evaluated for T1 and optimized for T2
        dimension: Benchmark dimension
        kernel_repetitions: Kernel loop count for T0
        evaluations: Evaluation count for T1 and the budget of each T2 run
        dos_repetitions: Number of DoS runs averaged into T2
        seed: Seed for the fixed point and the DoS runs

    Returns:
        TimingResult with overhead = (T2_mean - T1) / T0
    """
    problem = make_function(function, dimension)

    started = time.perf_counter()
    arithmetic_kernel(kernel_repetitions)
    t0 = time.perf_counter() - started

    rng = seeded_rng(seed)
    lower = problem.bounds.lower_array()
    upper = problem.bounds.upper_array()
    point = lower + (upper - lower) * rng.random(problem.dimension)
    started = time.perf_counter()
    for _ in range(evaluations):
        problem.fitness(point)
    t1 = time.perf_counter() - started

    budget = Budget(max_evaluations=evaluations)
    t2_total = 0.0
    for run in range(dos_repetitions):
        started = time.perf_counter()
        dos_optimize(problem, budget=budget, seed=seed + run)
        t2_total += time.perf_counter() - started
    t2_mean = t2_total / dos_repetitions

    overhead = (t2_mean - t1) / t0
    logger.info(
        f"Timing on {function}-{dimension}D: T0={t0:.4f}s T1={t1:.4f}s T2={t2_mean:.4f}s "
        f"overhead={overhead:.4f} (reference {REFERENCE_OVERHEAD})"
    )
    return TimingResult(t0=t0, t1=t1, t2_mean=t2_mean, overhead=overhead)
