"""Shared fixtures and a scripted random stream for hand-computed examples."""

from collections import deque
from typing import Iterable, Optional

import numpy as np
import pytest

from dogfight.core.problem import Problem
from dogfight.models.problem import Bounds


class ScriptedRng:
    """
    Replays fixed uniform draws, then repeats ``fallback``.

    Integer draws come from their own queue and default to ``low``.
    """

    def __init__(self, uniforms: Iterable[float] = (), integers: Iterable[int] = (), fallback: float = 0.5):
        self.uniforms = deque(float(u) for u in uniforms)
        self.integer_draws = deque(int(i) for i in integers)
        self.fallback = fallback
        self.calls = 0

    def _next(self) -> float:
        self.calls += 1
        return self.uniforms.popleft() if self.uniforms else self.fallback

    def random(self, size: Optional[int] = None):
        if size is None:
            return self._next()
        shape = (size,) if isinstance(size, int) else tuple(size)
        return np.array([self._next() for _ in range(int(np.prod(shape)))]).reshape(shape)

    def integers(self, low: int, high: Optional[int] = None, size=None):
        if high is None:
            low, high = 0, low
        value = self.integer_draws.popleft() if self.integer_draws else low
        assert low <= value < high, f"scripted integer {value} outside [{low}, {high})"
        return value

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return low + (high - low) * self.random(size)


@pytest.fixture
def scripted_rng():
    return ScriptedRng


@pytest.fixture
def sphere_problem():
    def sphere(x):
        return float(np.sum(np.asarray(x) ** 2))

    return Problem("sphere", Bounds.uniform(-5.0, 5.0, 3), sphere)


@pytest.fixture
def flat_problem():
    return Problem("flat", Bounds.uniform(-1.0, 1.0, 4), lambda x: 3.0)
