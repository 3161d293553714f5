"""Problem abstraction shared by every optimizer.

A problem owns its box, an objective and an optional constraint evaluator.
Optimizers only ever call :meth:`Problem.fitness`; constrained subclasses
fold their violations into it, unconstrained ones return the objective.
"""

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from dogfight.models.problem import Bounds, Evaluation

ConstraintFn = Callable[[np.ndarray], Tuple[Sequence[float], Sequence[float]]]


class Problem:
    """A box-bounded minimization target."""

    def __init__(
        self,
        name: str,
        bounds: Bounds,
        objective: Callable[[np.ndarray], float],
        inequality_count: int = 0,
        equality_count: int = 0,
        constraint_evaluator: Optional[ConstraintFn] = None,
    ):
        self.name = name
        self.bounds = bounds
        self._objective = objective
        self.inequality_count = inequality_count
        self.equality_count = equality_count
        self._constraint_evaluator = constraint_evaluator

    @property
    def dimension(self) -> int:
        return self.bounds.dimension

    @property
    def is_constrained(self) -> bool:
        return (self.inequality_count + self.equality_count) > 0

    def objective(self, x) -> float:
        return float(self._objective(np.asarray(x, dtype=float)))

    def constraints(self, x) -> Tuple[List[float], List[float]]:
        """Signed inequality values (feasible when <= 0) and equality residuals."""
        if self._constraint_evaluator is None:
            return [], []
        g, h = self._constraint_evaluator(np.asarray(x, dtype=float))
        return [float(v) for v in g], [float(v) for v in h]

    def evaluate(self, x) -> Evaluation:
        g, h = self.constraints(x)
        return Evaluation(f=self.objective(x), g=g, h=h)

    def fitness(self, x) -> float:
        """Value minimized by optimizers; non-finite results map to +inf."""
        value = self.objective(x)
        return value if math.isfinite(value) else math.inf

    def is_feasible(self, x) -> bool:
        g, h = self.constraints(x)
        return all(v <= 0.0 for v in g) and all(v == 0.0 for v in h)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, dimension={self.dimension})"
