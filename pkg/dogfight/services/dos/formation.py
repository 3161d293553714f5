"""Population structures for Dogfight Search: formations, the valuable-solution
archive, the shared velocity triple and the per-iteration promising set."""

from enum import IntEnum
from typing import List, NamedTuple

import numpy as np

from dogfight.config import settings


class Strategy(IntEnum):
    """The five search strategies, numbered as the selection rules refer to them."""

    FREE_FLIGHT = 1
    MANEUVER_LOCKON = 2
    MISSILE_ATTACK = 3
    MANEUVER_EVASION = 4
    FLARE_EVASION = 5


OFFENSIVE = (Strategy.MANEUVER_LOCKON, Strategy.MISSILE_ATTACK)
EVASIVE = (Strategy.MANEUVER_EVASION, Strategy.FLARE_EVASION)


class Formation:
    """
    One of the two adversarial sub-populations.

    Rows are kept sorted ascending by fitness between iterations, so rows
    ``0..leader_count-1`` are the leaders.
    """

    def __init__(
        self,
        positions: np.ndarray,
        fitness: np.ndarray,
        leader_count: int = 1,
        prob: float = settings.DOS_INITIAL_PROBABILITY,
    ):
        self.positions = np.asarray(positions, dtype=float)
        self.fitness = np.asarray(fitness, dtype=float)
        n = self.positions.shape[0]
        self.strategy = np.full(n, int(Strategy.FREE_FLIGHT), dtype=int)
        self.applied_speed = np.zeros(n)
        self.leader_count = leader_count
        self.prob = prob

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def best(self) -> np.ndarray:
        return self.positions[0]

    def sort(self) -> np.ndarray:
        """Reorder rows ascending by fitness; returns the permutation used."""
        order = np.argsort(self.fitness, kind="stable")
        self.positions = self.positions[order]
        self.fitness = self.fitness[order]
        self.strategy = self.strategy[order]
        self.applied_speed = self.applied_speed[order]
        return order


class Archive:
    """Ring buffer of positions recorded when a solution strictly improved."""

    def __init__(self, capacity: int, dimension: int):
        if capacity < 1:
            raise ValueError(f"archive capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.points = np.empty((capacity, dimension))
        self.fitness = np.empty(capacity)
        self.previous_fitness = np.empty(capacity)
        self.cursor = 0
        self.size = 0

    def push(self, point: np.ndarray, fitness: float, previous_fitness: float) -> None:
        """Store an improved position, overwriting the oldest entry when full."""
        self.points[self.cursor] = point
        self.fitness[self.cursor] = fitness
        self.previous_fitness[self.cursor] = previous_fitness
        self.cursor = (self.cursor + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def _chronological(self) -> np.ndarray:
        if self.size < self.capacity:
            return np.arange(self.size)
        return (np.arange(self.capacity) + self.cursor) % self.capacity

    def entries(self) -> np.ndarray:
        """Stored points, oldest first."""
        return self.points[self._chronological()]

    def entry(self, k: int) -> np.ndarray:
        """The k-th stored point (0-based, oldest first)."""
        return self.points[self._chronological()[k]]

    def recent(self, n: int) -> np.ndarray:
        """The n most recently stored points."""
        return self.points[self._chronological()[self.size - n:]]


class VelocityTriple(NamedTuple):
    """Shared speed bounds and acceleration for the current iteration."""

    v_min: float
    v_max: float
    accel: float

    @classmethod
    def from_speed(
        cls,
        speed: float,
        k5: float,
        floor: float = settings.DOS_VELOCITY_FLOOR,
        ceiling: float = settings.DOS_VELOCITY_CEILING,
    ) -> "VelocityTriple":
        v_min = min(max(min(k5 * speed, speed), floor), ceiling)
        v_max = min(max(k5 * speed, speed, v_min), ceiling)
        return cls(v_min, v_max, (v_max - v_min) / 1.2)


class PromisingSet:
    """Applied speeds and fitness drops of solutions that improved this iteration."""

    def __init__(self):
        self.speeds: List[float] = []
        self.drops: List[float] = []

    def add(self, speed: float, drop: float) -> None:
        if drop > 0.0 and np.isfinite(drop):
            self.speeds.append(float(speed))
            self.drops.append(float(drop))

    def __len__(self) -> int:
        return len(self.speeds)
