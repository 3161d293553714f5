"""Dynamic strategy selection and the offensive/evasive probability update."""

import math
from typing import Iterable

from dogfight.config import settings
from dogfight.models.params import DosParams

from .formation import Strategy


def _offensive_or_evasive(prob: float, rng) -> Strategy:
    r13 = rng.random()
    r14 = rng.random()
    if r13 < prob:
        return Strategy.MANEUVER_LOCKON if r14 < 0.5 else Strategy.MISSILE_ATTACK
    return Strategy.MANEUVER_EVASION if r14 < 0.8 else Strategy.FLARE_EVASION


def free_flight_probability(t: float, T: float, params: DosParams) -> float:
    return math.exp(params.k2 - t / T)


def select_strategy_stealth_leader(t: int, T: int, prob: float, params: DosParams, rng) -> Strategy:
    """Probabilistic free flight early on, otherwise attack or evade."""
    r12 = rng.random()
    if r12 < free_flight_probability(t, T, params) and t < params.k3 * T:
        return Strategy.FREE_FLIGHT
    return _offensive_or_evasive(prob, rng)


def select_strategy_regular_leader(t: int, T: int, prob: float, params: DosParams, rng) -> Strategy:
    """Forced free flight for the first k4 share of iterations, then the stealth rule."""
    if t < params.k4 * T:
        return Strategy.FREE_FLIGHT
    return select_strategy_stealth_leader(t, T, prob, params, rng)


def select_strategy_wing(leader_strategy: int, prob: float, rng) -> Strategy:
    """Wings follow their leader's family with their own random switch."""
    if leader_strategy == Strategy.FREE_FLIGHT:
        return Strategy.FREE_FLIGHT
    if leader_strategy in (Strategy.MANEUVER_LOCKON, Strategy.MISSILE_ATTACK):
        return Strategy.MANEUVER_LOCKON if rng.random() < prob else Strategy.MANEUVER_EVASION
    return Strategy.MANEUVER_LOCKON if rng.random() < 0.5 else Strategy.MISSILE_ATTACK


def wing_strategy_allowed(leader_strategy: int, wing_strategy: int) -> bool:
    """Whether a wing's strategy is reachable from its leader's."""
    if leader_strategy == Strategy.FREE_FLIGHT:
        return wing_strategy == Strategy.FREE_FLIGHT
    if leader_strategy in (Strategy.MANEUVER_LOCKON, Strategy.MISSILE_ATTACK):
        return wing_strategy in (Strategy.MANEUVER_LOCKON, Strategy.MANEUVER_EVASION)
    return wing_strategy in (Strategy.MANEUVER_LOCKON, Strategy.MISSILE_ATTACK)


def _rank_ratio(numerator: Iterable[int], denominator: Iterable[int]) -> float:
    total = sum(denominator)
    return sum(numerator) / total if total else 0.0


def update_prob_coefficient(
    prob: float,
    offensive: Iterable[int],
    evasive: Iterable[int],
    promising_offensive: Iterable[int],
    promising_evasive: Iterable[int],
    t: int,
    T: int,
) -> float:
    """Shift the offensive probability toward whichever family produced improvements."""
    delta = _rank_ratio(promising_offensive, offensive) - _rank_ratio(promising_evasive, evasive)
    updated = prob + 0.05 * (1.0 - prob) * delta * t / T
    return min(max(updated, settings.DOS_PROBABILITY_FLOOR), settings.DOS_PROBABILITY_CEILING)
