"""Path-planning configuration schemas."""

import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from dogfight.config import settings


class NoFlyZone(BaseModel):
    """Vertical cylinder the trajectory must stay out of."""

    model_config = ConfigDict(frozen=True)

    x_c: float
    y_c: float
    radius: float = Field(..., gt=0.0)
    height: float = Field(..., gt=0.0)


class PathConfig(BaseModel):
    """Planner geometry, limits and penalty."""

    start: Tuple[float, float] = settings.PATH_START
    turn_limit: float = Field(default=math.radians(settings.PATH_TURN_LIMIT_DEG), gt=0.0, lt=math.pi)
    min_clearance: float = settings.PATH_MIN_CLEARANCE
    max_altitude: float = settings.PATH_MAX_ALTITUDE
    domain_lower: float = settings.PATH_DOMAIN[0]
    domain_upper: float = settings.PATH_DOMAIN[1]
    samples: int = Field(default=settings.PATH_SAMPLES, ge=8)
    penalty: float = Field(default=settings.PATH_PENALTY, ge=0.0)
    node_count: int = Field(default=7, ge=2)
    step_bounds: Tuple[float, float] = settings.PATH_STEP_BOUNDS
    lift_bounds: Tuple[float, float] = settings.PATH_LIFT_BOUNDS
    destination: Optional[Tuple[float, float]] = None
    destination_tolerance: float = Field(default=settings.PATH_DESTINATION_TOLERANCE, gt=0.0)

    @model_validator(mode="after")
    def _check_ranges(self) -> "PathConfig":
        if not self.domain_lower < self.domain_upper:
            raise ValueError("domain_lower must be below domain_upper")
        if not self.step_bounds[0] < self.step_bounds[1]:
            raise ValueError("step_bounds must be increasing")
        if not self.lift_bounds[0] < self.lift_bounds[1]:
            raise ValueError("lift_bounds must be increasing")
        return self

    @property
    def genome_length(self) -> int:
        return 3 * self.node_count


class PathViolations(BaseModel):
    """Per-family violation flags of one trajectory."""

    turn: bool = False
    clearance: bool = False
    boundary: bool = False
    altitude: bool = False
    no_fly: bool = False
    destination: bool = False

    @property
    def count(self) -> int:
        return sum((self.turn, self.clearance, self.boundary, self.altitude, self.no_fly, self.destination))

    @property
    def feasible(self) -> bool:
        return self.count == 0
