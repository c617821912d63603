# models/network_plan.py
"""Controlled network plan: layers, per-layer sector bounds, per-sector node counts."""
import math
import re
from typing import Any, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

_PI_RATIONAL = re.compile(r"^(?P<k>\d+)?pi(?:/(?P<m>\d+))?$")


def parse_angle(value: Union[str, float, int]) -> float:
    """Convert a radian number or a ``"(k)?pi(/m)?"`` string to radians.

    Raises:
        ValueError: If a string does not match the pi-rational grammar
    """
    if isinstance(value, bool):
        raise ValueError("angle must be a number or a pi-rational string")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
        match = _PI_RATIONAL.match(value.replace(" ", "").lower())
        if match is None:
            raise ValueError(f"'{value}' does not match the pi-rational grammar (k)?pi(/m)?")
        k = int(match.group("k")) if match.group("k") else 1
        m = int(match.group("m")) if match.group("m") else 1
        if m == 0:
            raise ValueError(f"'{value}' divides by zero")
        return k * math.pi / m
    raise ValueError(f"unsupported angle value {value!r}")


class LayerSpec(BaseModel):
    """One concentric layer of the plan.

    Attributes:
        outer_radius: r_i, the layer spans (r_{i-1}, r_i] with r_0 = 0
        sector_bounds: Interior angles strictly inside (0, 2*pi), ascending
        sector_counts: Node count per sector, one more entry than sector_bounds
    """
    model_config = ConfigDict(frozen=True)

    outer_radius: float
    sector_bounds: List[float] = Field(default_factory=list)
    sector_counts: List[int]

    @field_validator("sector_bounds", mode="before")
    @classmethod
    def _normalize_bounds(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            return [parse_angle(v) if isinstance(v, str) else v for v in value]
        return value

    @property
    def n_sectors(self) -> int:
        """n_sec for this layer."""
        return len(self.sector_bounds) + 1

    @property
    def total_nodes(self) -> int:
        return sum(self.sector_counts)

    def sector_angles(self, j: int) -> tuple[float, float]:
        """Angular limits of sector ``j``: first starts at 0, last ends at 2*pi."""
        lo = self.sector_bounds[j - 1] if j > 0 else 0.0
        hi = self.sector_bounds[j] if j < len(self.sector_bounds) else 2.0 * math.pi
        return lo, hi


class NetworkPlan(BaseModel):
    """The plan P = [R Theta N] in ragged form.

    gamma and k_L are derived, never stored.
    """
    model_config = ConfigDict(frozen=True)

    layers: List[LayerSpec]

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    @property
    def radii(self) -> List[float]:
        """R vector."""
        return [layer.outer_radius for layer in self.layers]

    @property
    def cell_radius(self) -> float:
        return self.layers[-1].outer_radius

    @property
    def n_sectors_total(self) -> int:
        return sum(layer.n_sectors for layer in self.layers)

    @property
    def total_nodes(self) -> int:
        """n_S."""
        return sum(layer.total_nodes for layer in self.layers)

    @property
    def gamma(self) -> int:
        """Largest sector count over layers."""
        return max((layer.n_sectors for layer in self.layers), default=0)

    @property
    def k_l(self) -> Optional[int]:
        """Zero-based index of the first layer achieving gamma."""
        if not self.layers:
            return None
        gamma = self.gamma
        return next(i for i, layer in enumerate(self.layers) if layer.n_sectors == gamma)

    @property
    def counts(self) -> List[List[int]]:
        """Ragged N matrix."""
        return [list(layer.sector_counts) for layer in self.layers]
