"""Report and provenance models written next to every output."""
from typing import Any, Dict, List, Optional
from datetime import datetime
from pydantic import BaseModel, Field


class DensityReport(BaseModel):
    """Analytical vs empirical mean bin occupancy.

    ``analytical`` and ``error_pct`` are None when no reference geometry
    was supplied.
    """
    analytical: Optional[float] = None
    empirical: float
    n_xy: int
    error_pct: Optional[float] = None


class ReferenceRowResult(BaseModel):
    """One reproduced density-validation row."""
    name: str
    area: float
    samples: int
    bins: int
    number_density: float
    report: DensityReport
    published_analytical: float
    published_simulation: float
    published_error_pct: float


class RunManifest(BaseModel):
    """Everything needed to re-run a command and get the same bytes."""
    command: str
    config: Dict[str, Any]
    seed: Optional[int] = None
    inputs: List[str] = Field(default_factory=list)
    outputs: List[str] = Field(default_factory=list)
    tool_version: str
    generator: str
    wall_time: float = 0.0
    created_at: datetime = Field(default_factory=datetime.now)
