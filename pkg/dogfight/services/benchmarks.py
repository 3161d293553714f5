"""Unconstrained benchmark functions and the exploration/exploitation diversity trace.

The functions are the unshifted, unrotated base forms of the families used in
CEC single-objective suites. An optional shift vector and orthogonal rotation
can be supplied for users who hold official data.
"""

import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from dogfight.core.errors import DimensionMismatchError, UnknownNameError
from dogfight.core.problem import Problem
from dogfight.models.problem import Bounds

logger = logging.getLogger(__name__)

DEFAULT_RANGE = (-100.0, 100.0)
SCHWEFEL_OFFSET = 420.9687462275036
LUNACEK_MU0 = 2.5
LUNACEK_D = 1.0


def sphere(x: np.ndarray) -> float:
    return float(np.sum(x**2))


def bent_cigar(x: np.ndarray) -> float:
    return float(x[0] ** 2 + 1e6 * np.sum(x[1:] ** 2))


def zakharov(x: np.ndarray) -> float:
    i = np.arange(1, x.shape[0] + 1)
    weighted = np.sum(0.5 * i * x)
    return float(np.sum(x**2) + weighted**2 + weighted**4)


def rosenbrock(x: np.ndarray) -> float:
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (x[:-1] - 1.0) ** 2))


def rastrigin(x: np.ndarray) -> float:
    return float(10.0 * x.shape[0] + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x)))


def expanded_schaffer_f6(x: np.ndarray) -> float:
    """Schaffer F6 summed over consecutive pairs, wrapping the last to the first."""
    y = np.roll(x, -1)
    squared = x**2 + y**2
    terms = 0.5 + (np.sin(np.sqrt(squared)) ** 2 - 0.5) / (1.0 + 0.001 * squared) ** 2
    return float(np.sum(terms))


def lunacek_bi_rastrigin(x: np.ndarray) -> float:
    d = x.shape[0]
    s = 1.0 - 1.0 / (2.0 * math.sqrt(d + 20.0) - 8.2)
    mu1 = -math.sqrt((LUNACEK_MU0**2 - LUNACEK_D) / s)
    sphere_mu0 = np.sum((x - LUNACEK_MU0) ** 2)
    sphere_mu1 = LUNACEK_D * d + s * np.sum((x - mu1) ** 2)
    ripple = 10.0 * np.sum(1.0 - np.cos(2.0 * np.pi * (x - LUNACEK_MU0)))
    return float(min(sphere_mu0, sphere_mu1) + ripple)


def non_continuous_rastrigin(x: np.ndarray) -> float:
    y = np.where(np.abs(x) <= 0.5, x, np.floor(2.0 * x + 0.5) / 2.0)
    return rastrigin(y)


def levy(x: np.ndarray) -> float:
    w = 1.0 + (x - 1.0) / 4.0
    head = np.sin(np.pi * w[0]) ** 2
    body = np.sum((w[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * w[:-1] + 1.0) ** 2))
    tail = (w[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * w[-1]) ** 2)
    return float(head + body + tail)


def schwefel(x: np.ndarray) -> float:
    """Modified Schwefel with the 420.9687 offset and quadratic out-of-range penalty."""
    d = x.shape[0]
    z = x + SCHWEFEL_OFFSET
    inside = z * np.sin(np.sqrt(np.abs(z)))
    upper_fold = 500.0 - np.fmod(z, 500.0)
    above = upper_fold * np.sin(np.sqrt(np.abs(upper_fold))) - (z - 500.0) ** 2 / (10000.0 * d)
    lower_fold = np.fmod(np.abs(z), 500.0) - 500.0
    below = lower_fold * np.sin(np.sqrt(np.abs(lower_fold))) - (z + 500.0) ** 2 / (10000.0 * d)
    g = np.where(z > 500.0, above, np.where(z < -500.0, below, inside))
    return float(418.9829 * d - np.sum(g))


def ackley(x: np.ndarray) -> float:
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.mean(x**2)))
        - np.exp(np.mean(np.cos(2.0 * np.pi * x)))
        + 20.0
        + math.e
    )


def griewank(x: np.ndarray) -> float:
    i = np.arange(1, x.shape[0] + 1)
    return float(1.0 + np.sum(x**2) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))))


# name -> (function, optimum point factory or None when undeclared)
FUNCTIONS: Dict[str, Tuple[Callable[[np.ndarray], float], Optional[Callable[[int], np.ndarray]]]] = {
    "sphere": (sphere, np.zeros),
    "bent_cigar": (bent_cigar, np.zeros),
    "zakharov": (zakharov, np.zeros),
    "rosenbrock": (rosenbrock, np.ones),
    "rastrigin": (rastrigin, np.zeros),
    "expanded_schaffer_f6": (expanded_schaffer_f6, np.zeros),
    "lunacek_bi_rastrigin": (lunacek_bi_rastrigin, lambda d: np.full(d, LUNACEK_MU0)),
    "non_continuous_rastrigin": (non_continuous_rastrigin, np.zeros),
    "levy": (levy, np.ones),
    "schwefel": (schwefel, None),
    "ackley": (ackley, np.zeros),
    "griewank": (griewank, np.zeros),
}


def available_functions() -> List[str]:
    return sorted(FUNCTIONS)


class BenchmarkFunction(Problem):
    """A registered base function, optionally shifted and rotated: f(x) = base(R (x - s))."""

    def __init__(
        self,
        name: str,
        dimension: int,
        base: Callable[[np.ndarray], float],
        bounds: Optional[Bounds] = None,
        known_optimum: float = 0.0,
        optimum_point: Optional[np.ndarray] = None,
        shift: Optional[Sequence[float]] = None,
        rotation: Optional[np.ndarray] = None,
    ):
        bounds = bounds or Bounds.uniform(DEFAULT_RANGE[0], DEFAULT_RANGE[1], dimension)
        super().__init__(name, bounds, self._transformed)
        self.base = base
        self.known_optimum = known_optimum
        self.shift = None if shift is None else np.asarray(shift, dtype=float)
        self.rotation = None if rotation is None else np.asarray(rotation, dtype=float)

        if self.shift is not None and self.shift.shape != (dimension,):
            raise DimensionMismatchError(f"shift has shape {self.shift.shape}, expected ({dimension},)")
        if self.rotation is not None:
            if self.rotation.shape != (dimension, dimension):
                raise DimensionMismatchError(
                    f"rotation has shape {self.rotation.shape}, expected ({dimension}, {dimension})"
                )
            if not np.allclose(self.rotation @ self.rotation.T, np.eye(dimension), atol=1e-8):
                raise ValueError("rotation matrix must be orthogonal")

        self.optimum_point = None
        if optimum_point is not None:
            point = np.asarray(optimum_point, dtype=float)
            if self.rotation is not None:
                point = self.rotation.T @ point
            if self.shift is not None:
                point = point + self.shift
            self.optimum_point = point

    def _transformed(self, x: np.ndarray) -> float:
        z = x if self.shift is None else x - self.shift
        if self.rotation is not None:
            z = self.rotation @ z
        return self.base(z)


def make_function(
    name: str,
    dimension: int,
    bounds: Optional[Bounds] = None,
    shift: Optional[Sequence[float]] = None,
    rotation: Optional[np.ndarray] = None,
) -> BenchmarkFunction:
    """
    Build a registered benchmark function.

    Args:
        name: Registered function name
        dimension: Problem dimension, at least 2
        bounds: Search box, [-100, 100]^D by default
        shift: Optional shift vector
        rotation: Optional orthogonal rotation matrix

    Returns:
        BenchmarkFunction with its analytic optimum
    """
    if name not in FUNCTIONS:
        raise UnknownNameError("benchmark function", name, FUNCTIONS)
    if dimension < 2:
        raise ValueError(f"benchmark dimension must be at least 2, got {dimension}")
    base, optimum_factory = FUNCTIONS[name]
    logger.debug(f"Building benchmark {name} in {dimension} dimensions")
    optimum_point = optimum_factory(dimension) if optimum_factory is not None else None
    return BenchmarkFunction(
        name=name,
        dimension=dimension,
        base=base,
        bounds=bounds,
        known_optimum=0.0,
        optimum_point=optimum_point,
        shift=shift,
        rotation=rotation,
    )


def population_diversity(positions: np.ndarray) -> float:
    """Mean over dimensions of the mean absolute deviation from the median."""
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    per_dimension = np.mean(np.abs(np.median(positions, axis=0) - positions), axis=0)
    return float(np.mean(per_dimension))


def diversity_trace(position_history: Sequence[np.ndarray]) -> List[Tuple[float, float]]:
    """
    Exploration and exploitation percentages per recorded iteration.

    Args:
        position_history: One N x D position matrix per iteration

    Returns:
        (exploration_pct, exploitation_pct) pairs, each summing to 100
    """
    if len(position_history) == 0:
        raise ValueError("diversity trace needs at least one recorded iteration")
    diversity = np.array([population_diversity(p) for p in position_history])
    div_max = float(np.max(diversity))
    if div_max == 0.0:
        return [(0.0, 100.0) for _ in diversity]
    trace = []
    for div in diversity:
        exploration = 100.0 * div / div_max
        exploitation = 100.0 * abs(div - div_max) / div_max
        trace.append((float(exploration), float(exploitation)))
    return trace
