"""Movement machinery shared by the five strategies.

Every strategy moves a solution along ``u_pilot + u_head`` scaled by a
strategy-specific step multiplier built from the shared velocity triple and
the flight duration. Functions return the new point together with that
multiplier (the applied speed), which later feeds the velocity update.
"""

import math
from typing import Tuple

import numpy as np

from dogfight.config import settings
from dogfight.core.primitives import clamp_to_bounds, round_half_up
from dogfight.models.params import DosParams
from dogfight.models.problem import Bounds

from .formation import Archive, Formation, PromisingSet, VelocityTriple


def _index_draw(scale: int, r: float) -> int:
    """1-based index round(scale * r) clamped to [1, scale]."""
    return min(max(round_half_up(scale * r), 1), scale)


def high_quality_count(params: DosParams) -> int:
    return max(1, round_half_up(0.1 * params.swarm_size))


def leader_count(params: DosParams, rng) -> int:
    """Number of leaders, shared by both formations for one iteration."""
    half = params.formation_size
    r1 = rng.random()
    p = round_half_up((params.k1 + (0.5 - params.k1) * r1) * half)
    return int(min(max(p, 1), half - 1))


def head_guidance(formation: Formation, archive: Archive, params: DosParams, rng) -> np.ndarray:
    """Top-ranked solution minus a stored valuable solution; zero with an empty archive."""
    if archive.size == 0:
        return np.zeros(formation.positions.shape[1])
    nr = min(high_quality_count(params), formation.size)
    r1 = _index_draw(nr, rng.random())
    r2 = _index_draw(archive.size, rng.random())
    return formation.positions[r1 - 1] - archive.entry(r2 - 1)


def flight_duration(rng) -> float:
    return 0.8 + 0.4 * rng.random()


def update_velocity_bounds(
    current_velocity: float,
    promising: PromisingSet,
    params: DosParams,
    rng,
) -> Tuple[float, VelocityTriple]:
    """
    Adapt the shared speed from the promising solutions.

    Args:
        current_velocity: Velocity carried over from the previous iteration
        promising: Applied speeds and fitness drops of improved solutions
        params: DoS hyperparameters (k5 sets the speed ratio)
        rng: Random stream

    Returns:
        The carried-over velocity for the next iteration and the perturbed,
        clamped velocity triple for this one
    """
    new_velocity = current_velocity
    if len(promising):
        speeds = np.asarray(promising.speeds)
        drops = np.asarray(promising.drops)
        weights = drops / abs(drops.sum())
        denominator = float(np.sum(weights * speeds))
        if denominator != 0.0:
            new_velocity = float(np.sum(weights * speeds**2)) / denominator

    r5 = rng.random()
    perturbed = new_velocity + math.tan(math.pi / 2.0 * (r5 - 0.5)) / 10.0
    perturbed = min(max(abs(perturbed), settings.DOS_VELOCITY_FLOOR), settings.DOS_VELOCITY_CEILING)
    return new_velocity, VelocityTriple.from_speed(perturbed, params.k5)


def _move(x: np.ndarray, u_pilot: np.ndarray, u_head: np.ndarray, multiplier: float) -> np.ndarray:
    return x + (u_pilot + u_head) * multiplier


def free_flight_step(
    i: int,
    formation: Formation,
    leader_index: int,
    u_head: np.ndarray,
    v: VelocityTriple,
    dxi: float,
    bounds: Bounds,
    rng,
) -> Tuple[np.ndarray, float]:
    """Leaders head for a random point in the box, wings for their leader."""
    x = formation.positions[i]
    if i < formation.leader_count:
        lower, upper = bounds.lower_array(), bounds.upper_array()
        target = lower + (upper - lower) * rng.random(x.shape[0])
    else:
        target = formation.positions[leader_index]
    speed = v.v_min * dxi
    return clamp_to_bounds(_move(x, target - x, u_head, speed), bounds), speed


def maneuver_lockon_step(
    i: int,
    formation: Formation,
    opposing: Formation,
    u_head: np.ndarray,
    v: VelocityTriple,
    dxi: float,
    rng,
) -> Tuple[np.ndarray, float]:
    """Blend an opposing leader with its predicted position; accelerating motion."""
    x = formation.positions[i]
    h = int(rng.integers(0, opposing.leader_count))
    r8 = rng.random()
    r9 = rng.random()
    y_h = opposing.positions[h]
    y_pre = y_h + (opposing.best - y_h) * r9
    u_pilot = r8 * (y_h - x) + (1.0 - r8) * (y_pre - x)
    speed = v.v_min + 0.5 * v.accel * dxi**2
    return _move(x, u_pilot, u_head, speed), speed


def missile_attack_step(
    i: int,
    formation: Formation,
    opposing: Formation,
    u_head: np.ndarray,
    v: VelocityTriple,
    dxi: float,
    rng,
) -> Tuple[np.ndarray, float]:
    """Charge an opposing leader; decelerating motion."""
    x = formation.positions[i]
    h = int(rng.integers(0, opposing.leader_count))
    speed = v.v_max - 0.5 * v.accel * dxi**2
    return _move(x, opposing.positions[h] - x, u_head, speed), speed


def maneuver_evasion_step(
    i: int,
    formation: Formation,
    archive: Archive,
    params: DosParams,
    u_head: np.ndarray,
    v: VelocityTriple,
    dxi: float,
    rng,
) -> Tuple[np.ndarray, float]:
    """Retreat toward the centroid of the most recent valuable solutions."""
    x = formation.positions[i]
    if archive.size == 0:
        u_pilot = np.zeros_like(x)
    else:
        n = min(_index_draw(high_quality_count(params), rng.random()), archive.size)
        u_pilot = archive.recent(n).mean(axis=0) - x
    speed = v.v_min + 0.5 * v.accel * dxi**2
    return _move(x, u_pilot, u_head, speed), speed


def flare_boundary_point(x_rand: np.ndarray, i1: np.ndarray, i2: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Per-dimension boundary target; the (0, 0) indicator case maps to the upper bound."""
    lower, upper = bounds.lower_array(), bounds.upper_array()
    i1 = i1.astype(float)
    i2 = i2.astype(float)
    point = x_rand * i1 + i2 * (lower * i2 + upper * (1.0 - i2))
    return np.where((i1 == 0.0) & (i2 == 0.0), upper, point)


def flare_evasion_step(
    i: int,
    formation: Formation,
    bounds: Bounds,
    u_head: np.ndarray,
    v: VelocityTriple,
    dxi: float,
    rng,
) -> Tuple[np.ndarray, float]:
    """Break toward a random boundary region at full speed."""
    x = formation.positions[i]
    d = x.shape[0]
    lower, upper = bounds.lower_array(), bounds.upper_array()
    x_rand = lower + (upper - lower) * rng.random(d)
    i1 = rng.random(d) >= 0.5
    i2 = rng.random(d) >= 0.5
    target = flare_boundary_point(x_rand, i1, i2, bounds)
    speed = v.v_max * dxi
    return _move(x, target - x, u_head, speed), speed
