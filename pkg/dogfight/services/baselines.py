"""Reference optimizers: global-best particle swarm and uniform random search.

Both share the Evaluator budget accounting with Dogfight Search so their
curves and records are directly comparable.
"""

import logging
import time
from typing import List, Optional

import numpy as np

from dogfight.core.errors import BudgetError
from dogfight.core.evaluation import Evaluator
from dogfight.core.primitives import budget_for_dimension, clamp_to_bounds, seeded_rng
from dogfight.core.problem import Problem
from dogfight.models.params import PsoParams
from dogfight.models.problem import Budget, RunRecord

logger = logging.getLogger(__name__)

PSO_NAME = "PSO"
RANDOM_SEARCH_NAME = "RandomSearch"


def _diversity(history: Optional[List[np.ndarray]]):
    if not history:
        return None
    from dogfight.services.benchmarks import diversity_trace

    return diversity_trace(history)


def pso_optimize(
    problem: Problem,
    params: Optional[PsoParams] = None,
    budget: Optional[Budget] = None,
    seed: int = 0,
    record_history: bool = False,
) -> RunRecord:
    """
    Canonical global-best PSO with velocity and boundary clamping.

    Args:
        problem: Target problem
        params: Swarm size and update coefficients
        budget: Evaluation budget; must cover one swarm
        seed: Run seed
        record_history: Keep per-iteration positions for the diversity trace

    Returns:
        RunRecord with the best-so-far curve
    """
    params = params or PsoParams()
    if budget is None:
        budget = budget_for_dimension(problem.dimension)
    n = params.swarm_size
    if not budget.fits(n):
        raise BudgetError(f"budget of {budget.max_evaluations} evaluations is below the swarm size {n}")

    rng = seeded_rng(seed)
    evaluator = Evaluator(problem, budget, population_size=n)
    lower = problem.bounds.lower_array()
    upper = problem.bounds.upper_array()
    v_clamp = params.velocity_clamp_fraction * (upper - lower)
    d = problem.dimension
    history: Optional[List[np.ndarray]] = [] if record_history else None

    logger.debug(f"PSO on {problem.name}: N={n}, E={budget.max_evaluations}, seed={seed}")
    started = time.perf_counter()

    positions = lower + (upper - lower) * rng.random((n, d))
    velocities = -v_clamp + 2.0 * v_clamp * rng.random((n, d))
    fitness = evaluator.evaluate_many(positions)
    pbest = positions.copy()
    pbest_fitness = fitness.copy()
    if history is not None:
        history.append(positions.copy())

    while not evaluator.exhausted:
        g = int(np.argmin(pbest_fitness))
        r1 = rng.random((n, d))
        r2 = rng.random((n, d))
        velocities = (
            params.inertia * velocities
            + params.cognitive * r1 * (pbest - positions)
            + params.social * r2 * (pbest[g] - positions)
        )
        velocities = np.clip(velocities, -v_clamp, v_clamp)
        positions = clamp_to_bounds(positions + velocities, problem.bounds)

        before = evaluator.count
        fitness = evaluator.evaluate_many(positions)
        evaluated = evaluator.count - before
        improved = np.zeros(n, dtype=bool)
        improved[:evaluated] = fitness[:evaluated] < pbest_fitness[:evaluated]
        pbest[improved] = positions[improved]
        pbest_fitness[improved] = fitness[improved]
        if history is not None:
            history.append(positions.copy())

    elapsed = time.perf_counter() - started
    logger.debug(f"PSO finished on {problem.name}: best={evaluator.best_value:.6g}")
    return evaluator.finish(seed, PSO_NAME, elapsed, diversity=_diversity(history))


def random_search(
    problem: Problem,
    budget: Budget,
    seed: int = 0,
    record_history: bool = False,
    batch_size: int = 50,
) -> RunRecord:
    """Uniform sampling in the box with best-so-far tracking."""
    rng = seeded_rng(seed)
    evaluator = Evaluator(problem, budget, population_size=batch_size)
    lower = problem.bounds.lower_array()
    upper = problem.bounds.upper_array()
    history: Optional[List[np.ndarray]] = [] if record_history else None

    started = time.perf_counter()
    while not evaluator.exhausted:
        rows = min(batch_size, evaluator.remaining)
        samples = lower + (upper - lower) * rng.random((rows, problem.dimension))
        evaluator.evaluate_many(samples)
        if history is not None:
            history.append(samples)
    elapsed = time.perf_counter() - started
    return evaluator.finish(seed, RANDOM_SEARCH_NAME, elapsed, diversity=_diversity(history))
