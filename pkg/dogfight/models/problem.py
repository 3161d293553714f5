"""Problem-facing schemas: box bounds, evaluation budgets and run records."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Bounds(BaseModel):
    """Per-dimension box bounds."""

    model_config = ConfigDict(frozen=True)

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_box(self) -> "Bounds":
        if len(self.lower) != len(self.upper):
            raise ValueError(
                f"lower has {len(self.lower)} entries but upper has {len(self.upper)}"
            )
        if len(self.lower) == 0:
            raise ValueError("bounds must have at least one dimension")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if not lo < hi:
                raise ValueError(f"lower[{j}]={lo} is not below upper[{j}]={hi}")
        return self

    @classmethod
    def uniform(cls, low: float, high: float, dimension: int) -> "Bounds":
        """Same interval on every dimension."""
        return cls(lower=(float(low),) * dimension, upper=(float(high),) * dimension)

    @classmethod
    def from_arrays(cls, lower, upper) -> "Bounds":
        return cls(
            lower=tuple(float(v) for v in np.ravel(lower)),
            upper=tuple(float(v) for v in np.ravel(upper)),
        )

    @property
    def dimension(self) -> int:
        return len(self.lower)

    def lower_array(self) -> np.ndarray:
        return np.asarray(self.lower, dtype=float)

    def upper_array(self) -> np.ndarray:
        return np.asarray(self.upper, dtype=float)

    def midpoint(self) -> np.ndarray:
        return (self.lower_array() + self.upper_array()) / 2.0

    def contains(self, point, atol: float = 0.0) -> bool:
        x = np.asarray(point, dtype=float)
        return bool(
            np.all(x >= self.lower_array() - atol) and np.all(x <= self.upper_array() + atol)
        )


class Budget(BaseModel):
    """Evaluation budget with the curve checkpoint stride."""

    max_evaluations: int = Field(..., gt=0)
    # None means one checkpoint per population-sized batch.
    checkpoint_stride: Optional[int] = Field(default=None, gt=0)

    def fits(self, population_size: int) -> bool:
        return self.max_evaluations >= population_size


class Evaluation(BaseModel):
    """Raw evaluation of a point: objective plus signed constraint values."""

    f: float
    g: List[float] = Field(default_factory=list)
    h: List[float] = Field(default_factory=list)


class RunRecord(BaseModel):
    """Outcome of one optimizer run."""

    seed: int
    algorithm: str = ""
    problem: str = ""
    curve: List[Tuple[int, float]] = Field(default_factory=list)
    best_point: List[float] = Field(default_factory=list)
    best_value: float = float("inf")
    feasible: bool = False
    elapsed: float = 0.0
    evaluations: int = 0
    truncated: bool = False
    diversity: Optional[List[Tuple[float, float]]] = None

    @model_validator(mode="after")
    def _check_curve(self) -> "RunRecord":
        values = [v for _, v in self.curve]
        for prev, cur in zip(values, values[1:]):
            if cur > prev:
                raise ValueError("curve best_so_far must be non-increasing")
        return self
