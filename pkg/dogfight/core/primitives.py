"""Budget schedule, box clamping and the seeded randomness contract."""

import math
from typing import Optional

import numpy as np

from dogfight.core.errors import DimensionMismatchError
from dogfight.models.problem import Bounds, Budget

# (upper dimension limit, evaluations); the last row covers everything above.
BUDGET_SCHEDULE = (
    (10, 50_000),
    (30, 100_000),
    (50, 200_000),
    (150, 400_000),
)
BUDGET_CEILING = 500_000


def budget_for_dimension(d: int, checkpoint_stride: Optional[int] = None) -> Budget:
    """
    Maximum evaluation count for a problem of dimension d.

    Args:
        d: Problem dimension, at least 1
        checkpoint_stride: Evaluations between convergence-curve checkpoints

    Returns:
        Budget following the piecewise dimension schedule
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    for limit, evaluations in BUDGET_SCHEDULE:
        if d <= limit:
            return Budget(max_evaluations=evaluations, checkpoint_stride=checkpoint_stride)
    return Budget(max_evaluations=BUDGET_CEILING, checkpoint_stride=checkpoint_stride)


def clamp_to_bounds(point, bounds: Bounds) -> np.ndarray:
    """Project a point (or a stack of points) onto the box."""
    x = np.asarray(point, dtype=float)
    if x.shape[-1] != bounds.dimension:
        raise DimensionMismatchError(
            f"point has dimension {x.shape[-1]}, bounds have {bounds.dimension}"
        )
    return np.clip(x, bounds.lower_array(), bounds.upper_array())


def round_half_up(value: float) -> int:
    """Rounding with halves going up, as used by the index and leader formulas."""
    return int(math.floor(value + 0.5))


def seeded_rng(seed: int) -> np.random.Generator:
    """Deterministic PCG64 stream for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


def derive_run_seed(root_seed: int, run_index: int) -> int:
    """Mix a run index into the root seed; independent of execution order."""
    sequence = np.random.SeedSequence(
        entropy=int(root_seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(int(run_index),)
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
