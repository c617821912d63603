"""Type definitions shared by the deployment modules."""
from typing import Dict, List, NamedTuple, Optional, Tuple, TypedDict

import numpy as np
import numpy.typing as npt

# Validation types
ValidationResult = Tuple[bool, Optional[str]]

# Array aliases
FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


class Point2D(NamedTuple):
    """Cartesian position of one node."""
    x: float
    y: float


class Bounds(NamedTuple):
    """Axis-aligned deployment surface [x_lo, x_hi] x [y_lo, y_hi]."""
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    @property
    def width(self) -> float:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> float:
        return self.y_hi - self.y_lo

    @property
    def area(self) -> float:
        return self.width * self.height

    @classmethod
    def square(cls, half_side: float) -> "Bounds":
        """Centered square [-h, h]^2."""
        return cls(-half_side, half_side, -half_side, half_side)


class SectorRange(NamedTuple):
    """Contiguous run of points generated for one (layer, sector) cluster."""
    layer: int
    sector: int
    start: int
    stop: int


class PlanViolation(NamedTuple):
    """One violated plan invariant.

    ``layer`` and ``sector`` are zero-based; None when the violation concerns
    the plan as a whole or a whole layer.
    """
    message: str
    layer: Optional[int] = None
    sector: Optional[int] = None

    def __str__(self) -> str:
        where = []
        if self.layer is not None:
            where.append(f"layer {self.layer}")
        if self.sector is not None:
            where.append(f"sector {self.sector}")
        return f"{', '.join(where)}: {self.message}" if where else self.message


# Structured summary records
class SectorSummaryDict(TypedDict):
    """Per-sector row of a controlled deployment summary."""
    layer: int
    sector: int
    inner_radius: float
    outer_radius: float
    angle_lo: float
    angle_hi: float
    area: float
    planned: int
    generated: int
    density: float


class LayerSummaryDict(TypedDict):
    """Per-layer row of an automatic deployment summary."""
    layer: int
    inner_radius: float
    outer_radius: float
    area: float
    nodes: int
    density: float


JsonDict = Dict[str, object]
SummaryRows = List[SectorSummaryDict]
