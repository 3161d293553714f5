"""Optimizer and constraint-handling parameter schemas."""

from enum import Enum

from pydantic import BaseModel, Field, field_validator

from dogfight.config import settings


class DosParams(BaseModel):
    """Dogfight Search hyperparameters."""

    swarm_size: int = Field(default=settings.DOS_SWARM_SIZE, ge=4)
    k1: float = Field(default=settings.DOS_K1, gt=0.0, lt=0.5)
    k2: float = settings.DOS_K2
    k3: float = Field(default=settings.DOS_K3, gt=0.0, le=1.0)
    k4: float = Field(default=settings.DOS_K4, gt=0.0, le=1.0)
    k5: float = Field(default=settings.DOS_K5, gt=0.0, le=1.0)
    initial_velocity: float = Field(default=settings.DOS_INITIAL_VELOCITY, gt=0.0)
    initial_probability: float = Field(default=settings.DOS_INITIAL_PROBABILITY, ge=0.0, le=1.0)
    # False restores unconditional replacement of every evaluated solution
    greedy_replacement: bool = settings.DOS_GREEDY_REPLACEMENT

    @field_validator("swarm_size")
    @classmethod
    def _even_swarm(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"swarm_size must be even, got {value}")
        return value

    @property
    def formation_size(self) -> int:
        return self.swarm_size // 2


class PsoParams(BaseModel):
    """Global-best particle swarm parameters."""

    swarm_size: int = Field(default=settings.PSO_SWARM_SIZE, ge=2)
    inertia: float = settings.PSO_INERTIA
    cognitive: float = settings.PSO_COGNITIVE
    social: float = settings.PSO_SOCIAL
    velocity_clamp_fraction: float = Field(default=settings.PSO_VELOCITY_CLAMP, gt=0.0, le=1.0)


class PenaltyMode(str, Enum):
    """Supported constraint-handling modes."""

    ADDITIVE_VIOLATION = "additive-violation"


class PenaltyConfig(BaseModel):
    """Additive penalty: a fixed offset per violated constraint plus weighted magnitude."""

    mode: PenaltyMode = PenaltyMode.ADDITIVE_VIOLATION
    weight: float = Field(default=settings.PENALTY_WEIGHT, gt=0.0, allow_inf_nan=False)
    offset: float = Field(default=settings.PENALTY_OFFSET, ge=0.0, allow_inf_nan=False)
