"""Constrained problems with discrete snapping and the additive penalty.

Every engineering problem is a :class:`ConstrainedProblem`. Optimizers see
only ``fitness``, which snaps discrete coordinates, evaluates the raw
objective and constraints in one pass and adds the penalty.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from dogfight.config import settings
from dogfight.core.errors import DimensionMismatchError, OutOfBoundsError
from dogfight.core.problem import Problem
from dogfight.models.engineering import DiscreteSpec
from dogfight.models.params import PenaltyConfig
from dogfight.models.problem import Bounds, Evaluation, RunRecord

logger = logging.getLogger(__name__)

BOUNDS_ATOL = 1e-9

RawEvaluator = Callable[[np.ndarray], Tuple[float, Sequence[float], Sequence[float]]]


class ConstrainedProblem(Problem):
    """An engineering design problem: raw formulation plus penalty handling."""

    def __init__(
        self,
        name: str,
        problem_id: str,
        bounds: Bounds,
        raw: RawEvaluator,
        inequality_count: int,
        equality_count: int = 0,
        discrete: Optional[Dict[int, DiscreteSpec]] = None,
        penalty: Optional[PenaltyConfig] = None,
        epsilon: Optional[float] = None,
    ):
        super().__init__(name, bounds, self._raw_objective, inequality_count, equality_count, self._raw_constraints)
        self.problem_id = problem_id
        self._raw = raw
        self.discrete = dict(discrete or {})
        self.penalty = penalty or PenaltyConfig()
        self.epsilon = settings.EQUALITY_TOLERANCE if epsilon is None else float(epsilon)
        for index in self.discrete:
            if not 0 <= index < bounds.dimension:
                raise DimensionMismatchError(f"discrete index {index} outside dimension {bounds.dimension}")

    def snap(self, x) -> np.ndarray:
        """Copy of x with every discrete coordinate moved to its nearest allowed value."""
        snapped = np.array(x, dtype=float, copy=True)
        for index, spec in self.discrete.items():
            snapped[index] = spec.snap(snapped[index])
        return snapped

    def evaluate_raw(self, x) -> Evaluation:
        """
        Objective and signed constraint values at the snapped point.

        Non-finite arithmetic anywhere marks the whole evaluation infinite,
        which makes the point infeasible.
        """
        point = np.asarray(x, dtype=float)
        if point.shape != (self.dimension,):
            raise DimensionMismatchError(f"point has shape {point.shape}, expected ({self.dimension},)")
        if not self.bounds.contains(point, atol=BOUNDS_ATOL):
            raise OutOfBoundsError(f"point lies outside the box of {self.problem_id}")
        point = self.snap(point)
        try:
            with np.errstate(all="ignore"):
                f, g, h = self._raw(point)
                f = float(f)
                g = [float(v) for v in g]
                h = [float(v) for v in h]
        except (ArithmeticError, ValueError, TypeError) as exc:
            logger.debug(f"{self.problem_id}: arithmetic failure at evaluation: {exc}")
            return self._infeasible()
        if not (math.isfinite(f) and all(map(math.isfinite, g)) and all(map(math.isfinite, h))):
            return self._infeasible()
        return Evaluation(f=f, g=g, h=h)

    def _infeasible(self) -> Evaluation:
        return Evaluation(
            f=math.inf,
            g=[math.inf] * self.inequality_count,
            h=[math.inf] * self.equality_count,
        )

    def _raw_objective(self, x: np.ndarray) -> float:
        return self.evaluate_raw(x).f

    def _raw_constraints(self, x: np.ndarray) -> Tuple[List[float], List[float]]:
        evaluation = self.evaluate_raw(x)
        return evaluation.g, evaluation.h

    def evaluate(self, x) -> Evaluation:
        return self.evaluate_raw(x)

    def fitness(self, x) -> float:
        return penalized_objective(self, self.penalty, x)

    def violations(self, x) -> List[float]:
        """Non-negative violation magnitude per constraint, inequalities first."""
        evaluation = self.evaluate_raw(x)
        return _violations(evaluation, self.epsilon)

    def is_feasible(self, x) -> bool:
        evaluation = self.evaluate_raw(x)
        if not math.isfinite(evaluation.f):
            return False
        return all(v == 0.0 for v in _violations(evaluation, self.epsilon))


def _violations(evaluation: Evaluation, epsilon: float) -> List[float]:
    inequality = [max(0.0, v) for v in evaluation.g]
    equality = [abs(v) - epsilon if abs(v) > epsilon else 0.0 for v in evaluation.h]
    return inequality + equality


def penalized_objective(problem: ConstrainedProblem, config: PenaltyConfig, x) -> float:
    """
    Raw objective plus a fixed offset and a weighted magnitude per violated constraint.

    Args:
        problem: Constrained problem
        config: Penalty weight and offset
        x: Point inside the problem box

    Returns:
        Penalized value; +inf when the raw evaluation is non-finite
    """
    evaluation = problem.evaluate_raw(x)
    if not math.isfinite(evaluation.f):
        return math.inf
    penalty = 0.0
    for amount in _violations(evaluation, problem.epsilon):
        if amount > 0.0:
            penalty += config.offset + config.weight * amount
    return evaluation.f + penalty


def snap_discrete(problem: ConstrainedProblem, x) -> np.ndarray:
    return problem.snap(x)


def feasibility_report(runs: Sequence[RunRecord], problem: ConstrainedProblem) -> float:
    """Fraction of runs whose best point is feasible."""
    if len(runs) == 0:
        raise ValueError("feasibility report needs at least one run")
    feasible = 0
    for run in runs:
        if run.best_point and problem.is_feasible(run.best_point):
            feasible += 1
    rate = feasible / len(runs)
    logger.debug(f"{problem.problem_id}: {feasible}/{len(runs)} feasible runs")
    return rate
