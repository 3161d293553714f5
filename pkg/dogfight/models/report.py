"""Schemas for run summaries and statistical comparison reports."""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class Mark(str, Enum):
    """Outcome of a pairwise test from the reference algorithm's point of view."""

    BETTER = "+"
    WORSE = "-"
    TIE = "≈"


class SummaryRow(BaseModel):
    """Mean, Std and Best over feasible runs, plus the feasible fraction."""

    mean: Optional[float] = None
    std: Optional[float] = None
    best: Optional[float] = None
    success: float = Field(default=0.0, ge=0.0, le=1.0)
    runs: int = Field(default=0, ge=0)


class PairwiseResult(BaseModel):
    algorithm: str
    p_value: float = Field(..., ge=0.0, le=1.0)
    mark: Mark


class StatReport(BaseModel):
    """Everything the comparison tables show, for one battery."""

    reference: str
    algorithms: List[str]
    problems: List[str]
    summaries: Dict[str, Dict[str, SummaryRow]] = Field(default_factory=dict)
    pairwise: Dict[str, Dict[str, PairwiseResult]] = Field(default_factory=dict)
    kruskal: Dict[str, Dict[str, float]] = Field(default_factory=dict)
    friedman_mean_rank: Dict[str, float] = Field(default_factory=dict)
    friedman_rank: Dict[str, int] = Field(default_factory=dict)
    friedman_p_value: Optional[float] = None
