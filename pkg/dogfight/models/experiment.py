"""Experiment configuration: problems, algorithms, seeds and output."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from dogfight.config import settings


class ProblemKind(str, Enum):
    BENCHMARK = "benchmark"
    ENGINEERING = "engineering"
    PATHPLAN = "pathplan"


class ProblemSelector(BaseModel):
    """
    Plain-data pointer to a problem, cheap to send to worker processes.

    Text form: ``benchmark:<name>:<dim>``, ``engineering:<id>`` or
    ``pathplan[:<zone preset>]``.
    """

    model_config = ConfigDict(frozen=True)

    kind: ProblemKind
    name: str = ""
    dimension: Optional[int] = Field(default=None, ge=2)
    terrain_seed: int = settings.TERRAIN_SEED

    @model_validator(mode="after")
    def _check_kind(self) -> "ProblemSelector":
        if self.kind == ProblemKind.BENCHMARK:
            if not self.name:
                raise ValueError("benchmark selector needs a function name")
            if self.dimension is None:
                raise ValueError(f"benchmark selector {self.name} needs a dimension")
        if self.kind == ProblemKind.ENGINEERING and not self.name:
            raise ValueError("engineering selector needs a problem id")
        return self

    @classmethod
    def parse(cls, text: str, dimension: Optional[int] = None, terrain_seed: Optional[int] = None) -> "ProblemSelector":
        parts = [p.strip() for p in text.strip().split(":")]
        try:
            kind = ProblemKind(parts[0].lower())
        except ValueError:
            raise ValueError(
                f"unknown problem kind {parts[0]!r} in {text!r}; expected one of "
                f"{', '.join(k.value for k in ProblemKind)}"
            ) from None
        fields: Dict[str, Any] = {"kind": kind}
        if terrain_seed is not None:
            fields["terrain_seed"] = terrain_seed
        if kind == ProblemKind.BENCHMARK:
            if len(parts) not in (2, 3):
                raise ValueError(f"benchmark selector must be benchmark:<name>:<dim>, got {text!r}")
            fields["name"] = parts[1]
            if len(parts) == 3:
                fields["dimension"] = int(parts[2])
            if dimension is not None:
                fields["dimension"] = dimension
        elif kind == ProblemKind.ENGINEERING:
            if len(parts) != 2:
                raise ValueError(f"engineering selector must be engineering:<id>, got {text!r}")
            fields["name"] = parts[1].upper()
        else:
            if len(parts) > 2:
                raise ValueError(f"pathplan selector must be pathplan[:<preset>], got {text!r}")
            fields["name"] = parts[1] if len(parts) == 2 else ""
        return cls(**fields)

    @property
    def label(self) -> str:
        """File-name-safe problem label."""
        if self.kind == ProblemKind.BENCHMARK:
            return f"{self.name}-{self.dimension}D"
        if self.kind == ProblemKind.ENGINEERING:
            return self.name
        return f"pathplan-{self.name}" if self.name else "pathplan"


class AlgorithmSpec(BaseModel):
    """An algorithm name with parameter overrides."""

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)


class ExperimentConfig(BaseModel):
    """One battery: every algorithm on every problem for `runs` seeds."""

    name: str = "experiment"
    problems: List[ProblemSelector] = Field(..., min_length=1)
    algorithms: List[AlgorithmSpec] = Field(..., min_length=1)
    runs: int = Field(default=settings.DEFAULT_RUNS, ge=1)
    root_seed: int = Field(default=settings.DEFAULT_ROOT_SEED, ge=0)
    budget: Optional[int] = Field(default=None, gt=0)
    output_dir: str = settings.OUTPUT_DIR
    workers: int = Field(default=settings.WORKERS, ge=1)
    diversity: bool = False
    record: bool = settings.RECORD_RUNS
    paired: bool = False

    @field_validator("algorithms")
    @classmethod
    def _unique_algorithms(cls, value: List[AlgorithmSpec]) -> List[AlgorithmSpec]:
        names = [a.name for a in value]
        if len(set(names)) != len(names):
            raise ValueError(f"algorithm names must be unique, got {names}")
        return value

    @property
    def algorithm_names(self) -> List[str]:
        return [a.name for a in self.algorithms]
