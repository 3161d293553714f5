"""Wind farm layout (R10): spacing constraints and a pluggable power model.

The genome holds the 15 turbine x coordinates followed by the 15 y
coordinates. Spacing is enforced for every pair among the first 14
turbines, which yields the 91 published constraints.
"""

import itertools
import logging
import math
from typing import List, Optional, Protocol, Tuple

import numpy as np

from dogfight.models.engineering import WindPowerConfig
from dogfight.models.params import PenaltyConfig
from dogfight.models.problem import Bounds

from .base import ConstrainedProblem

logger = logging.getLogger(__name__)

TURBINES = 15
SPACED_TURBINES = 14
FIELD = (40.0, 1960.0)
SPACING_RADII = 5.0


class PowerModel(Protocol):
    """Anything that maps a layout to expected power per turbine."""

    rotor_radius: float

    def expected_power(self, layout: np.ndarray) -> np.ndarray: ...


class SectorWeibullPowerModel:
    """
    Expected turbine output under a sector-wise Weibull wind rose.

    Each sector contributes the rated power times the probability of blowing
    between rated and cut-out speed, plus the logistic power curve integrated
    bin by bin between cut-in and rated speed. Upstream turbines shrink the
    Weibull scale of a downstream turbine through Jensen wake deficits
    combined in root-sum-square.
    """

    def __init__(self, config: Optional[WindPowerConfig] = None):
        self.config = config or WindPowerConfig()
        cfg = self.config
        self.rotor_radius = cfg.rotor_radius
        sectors = len(cfg.sector_weights)
        # wind blows toward (cos theta, sin theta), theta at each sector centre
        self.directions = (np.arange(sectors) + 0.5) * (2.0 * math.pi / sectors)
        self.speeds = np.linspace(cfg.cut_in, cfg.rated_speed, cfg.speed_bins + 1)
        mids = np.exp((self.speeds[:-1] + self.speeds[1:]) / 2.0)
        self.curve = mids / (cfg.curve_alpha + cfg.curve_beta * mids)
        logger.debug(f"Power model with {sectors} sectors, cut-in {cfg.cut_in}, {cfg.speed_bins} bins")

    def wake_deficit(self, layout: np.ndarray, direction: float) -> np.ndarray:
        """Combined fractional speed deficit at each turbine for one wind direction."""
        cfg = self.config
        flow = np.array([math.cos(direction), math.sin(direction)])
        offsets = layout[:, None, :] - layout[None, :, :]
        downstream = offsets @ flow
        crosswind = np.abs(offsets[..., 0] * flow[1] - offsets[..., 1] * flow[0])
        wake_radius = cfg.rotor_radius + cfg.wake_decay * downstream
        inside = (downstream > 0.0) & (crosswind < wake_radius)
        strength = 1.0 - math.sqrt(1.0 - cfg.thrust_coefficient)
        with np.errstate(divide="ignore", invalid="ignore"):
            single = np.where(inside, strength * (cfg.rotor_radius / wake_radius) ** 2, 0.0)
        return np.sqrt(np.sum(single**2, axis=1))

    def expected_power(self, layout: np.ndarray) -> np.ndarray:
        cfg = self.config
        layout = np.asarray(layout, dtype=float)
        total = np.zeros(layout.shape[0])
        for direction, weight in zip(self.directions, cfg.sector_weights):
            scale = cfg.weibull_scale * np.clip(1.0 - self.wake_deficit(layout, direction), 1e-12, None)
            ratio = np.array([cfg.rated_speed, cfg.cut_out])[None, :] / scale[:, None]
            exceed = np.exp(-(ratio**cfg.weibull_shape))
            rated = cfg.rated_power * (exceed[:, 0] - exceed[:, 1])
            tails = np.exp(-((self.speeds[None, :] / scale[:, None]) ** cfg.weibull_shape))
            ramp = np.sum((tails[:, :-1] - tails[:, 1:]) * self.curve, axis=1)
            total += weight * (rated + ramp)
        return total


def spacing_pairs() -> List[Tuple[int, int]]:
    """Constrained turbine pairs (0-based) in published constraint order."""
    return list(itertools.combinations(range(SPACED_TURBINES), 2))


def layout_from_genome(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.column_stack([x[:TURBINES], x[TURBINES:]])


def make_wind_farm_raw(model: PowerModel):
    pairs = np.array(spacing_pairs())
    min_distance = SPACING_RADII * model.rotor_radius

    def wind_farm_raw(x: np.ndarray):
        layout = layout_from_genome(x)
        f = -float(np.sum(model.expected_power(layout)))
        gaps = layout[pairs[:, 0]] - layout[pairs[:, 1]]
        g = min_distance - np.hypot(gaps[:, 0], gaps[:, 1])
        return f, g.tolist(), []

    return wind_farm_raw


def wind_farm(
    penalty: Optional[PenaltyConfig] = None,
    epsilon: Optional[float] = None,
    power_model: Optional[PowerModel] = None,
) -> ConstrainedProblem:
    model = power_model or SectorWeibullPowerModel()
    bounds = Bounds.uniform(FIELD[0], FIELD[1], 2 * TURBINES)
    return ConstrainedProblem(
        "wind_farm",
        "R10",
        bounds,
        make_wind_farm_raw(model),
        len(spacing_pairs()),
        penalty=penalty,
        epsilon=epsilon,
    )
