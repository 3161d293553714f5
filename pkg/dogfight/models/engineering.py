"""Schemas for the constrained engineering suite."""

import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from dogfight.config import settings


class DiscreteSpec(BaseModel):
    """A dimension restricted to integers or to an explicit value set."""

    model_config = ConfigDict(frozen=True)

    integer: bool = False
    values: Optional[Tuple[float, ...]] = None

    @model_validator(mode="after")
    def _one_kind(self) -> "DiscreteSpec":
        if self.integer == (self.values is not None):
            raise ValueError("a discrete spec is either integer or an explicit value set")
        if self.values is not None and len(self.values) == 0:
            raise ValueError("value set must not be empty")
        return self

    def snap(self, value: float) -> float:
        """Nearest allowed value; ties go to the smaller one."""
        if self.integer:
            return float(math.ceil(value - 0.5))
        ordered = np.sort(np.asarray(self.values, dtype=float))
        return float(ordered[int(np.argmin(np.abs(ordered - value)))])


class ProblemInfo(BaseModel):
    """Catalog entry for one engineering problem."""

    problem_id: str
    title: str
    dimension: int = Field(..., gt=0)
    inequality_count: int = Field(..., ge=0)
    equality_count: int = Field(default=0, ge=0)
    best_known: Optional[float] = None
    oracle: Optional[Tuple[float, ...]] = None
    # oracle reproduces the objective only; its discrete coordinates are relaxed
    objective_only: bool = False


class WindPowerConfig(BaseModel):
    """Constants of the sector Weibull power model with Jensen wakes."""

    sector_weights: Tuple[float, ...] = tuple(settings.WIND_SECTOR_WEIGHTS)
    weibull_scale: float = Field(default=settings.WIND_WEIBULL_SCALE, gt=0.0)
    weibull_shape: float = Field(default=settings.WIND_WEIBULL_SHAPE, gt=0.0)
    rated_power: float = Field(default=settings.WIND_RATED_POWER, gt=0.0)
    cut_in: float = Field(default=settings.WIND_CUT_IN, ge=0.0)
    rated_speed: float = Field(default=settings.WIND_RATED_SPEED, gt=0.0)
    cut_out: float = Field(default=settings.WIND_CUT_OUT, gt=0.0)
    speed_bins: int = Field(default=settings.WIND_SPEED_BINS, ge=1)
    curve_alpha: float = settings.WIND_CURVE_ALPHA
    curve_beta: float = settings.WIND_CURVE_BETA
    rotor_radius: float = Field(default=settings.WIND_ROTOR_RADIUS, gt=0.0)
    thrust_coefficient: float = Field(default=settings.WIND_THRUST_COEFFICIENT, gt=0.0, lt=1.0)
    wake_decay: float = Field(default=settings.WIND_WAKE_DECAY, gt=0.0)

    @model_validator(mode="after")
    def _check_speeds(self) -> "WindPowerConfig":
        if not self.cut_in < self.rated_speed < self.cut_out:
            raise ValueError("wind speeds must satisfy cut_in < rated_speed < cut_out")
        if len(self.sector_weights) == 0 or any(w < 0.0 for w in self.sector_weights):
            raise ValueError("sector weights must be non-empty and non-negative")
        return self
