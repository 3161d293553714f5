"""Budget-limited evaluation with best-so-far and convergence-curve tracking."""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from dogfight.core.problem import Problem
from dogfight.models.problem import Budget, RunRecord

logger = logging.getLogger(__name__)


class Evaluator:
    """
    Counts every fitness call against the budget.

    Constraint evaluation is bundled into ``Problem.fitness`` so each call
    costs exactly one evaluation, feasible or not.
    """

    def __init__(self, problem: Problem, budget: Budget, population_size: int = 1):
        self.problem = problem
        self.max_evaluations = budget.max_evaluations
        self.stride = budget.checkpoint_stride or max(1, population_size)
        self.count = 0
        self.best_value = math.inf
        self.best_point: Optional[np.ndarray] = None
        self.curve: List[Tuple[int, float]] = []
        self.truncated = False

    @property
    def remaining(self) -> int:
        return self.max_evaluations - self.count

    @property
    def exhausted(self) -> bool:
        return self.count >= self.max_evaluations

    def evaluate(self, x) -> float:
        """Evaluate one point; returns +inf without counting once exhausted."""
        if self.exhausted:
            self.truncated = True
            return math.inf
        value = self.problem.fitness(x)
        if not math.isfinite(value):
            value = math.inf
        self.count += 1
        if self.best_point is None or value < self.best_value:
            self.best_value = value
            self.best_point = np.array(x, dtype=float, copy=True)
        if self.count % self.stride == 0:
            self.curve.append((self.count, self.best_value))
        return value

    def evaluate_many(self, points) -> np.ndarray:
        """Evaluate rows in order until the budget runs out; the rest stay +inf."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.full(points.shape[0], math.inf)
        for i, row in enumerate(points):
            if self.exhausted:
                self.truncated = True
                logger.debug(f"Budget exhausted after {self.count} evaluations; {len(points) - i} rows skipped")
                break
            values[i] = self.evaluate(row)
        return values

    def finish(
        self,
        seed: int,
        algorithm: str,
        elapsed: float,
        diversity: Optional[List[Tuple[float, float]]] = None,
    ) -> RunRecord:
        """Close the curve and package the run."""
        if not self.curve or self.curve[-1][0] != self.count:
            self.curve.append((self.count, self.best_value))
        best_point = self.best_point if self.best_point is not None else np.array([])
        feasible = self.best_point is not None and self.problem.is_feasible(self.best_point)
        return RunRecord(
            seed=int(seed),
            algorithm=algorithm,
            problem=self.problem.name,
            curve=list(self.curve),
            best_point=[float(v) for v in best_point],
            best_value=float(self.best_value),
            feasible=bool(feasible),
            elapsed=float(elapsed),
            evaluations=self.count,
            truncated=self.truncated,
            diversity=diversity,
        )
