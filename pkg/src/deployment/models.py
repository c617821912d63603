"""Data models for generated deployments and automatic configuration."""
from dataclasses import dataclass, field
import math
from typing import Any, Dict, List

import numpy as np

from ..models.network_plan import LayerSpec, NetworkPlan
from .exceptions import ConfigurationError
from .geometry import RingSector
from .types import FloatArray, IntArray, Point2D, SectorRange, ValidationResult


@dataclass
class Deployment:
    """Generated node positions plus provenance.

    Attributes:
        xy: (n, 2) array of positions in generation order
        layer: Zero-based layer tag per point
        sector: Zero-based sector-within-layer tag per point
        seed: Root seed of the run
        ranges: Contiguous (layer, sector, start, stop) runs in generation order
        meta: Plan digest or automatic-config echo, generator name, draw count
    """
    xy: FloatArray
    layer: IntArray
    sector: IntArray
    seed: int
    ranges: List[SectorRange] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.xy.shape[0])

    @property
    def x(self) -> FloatArray:
        return self.xy[:, 0]

    @property
    def y(self) -> FloatArray:
        return self.xy[:, 1]

    @property
    def radius(self) -> FloatArray:
        return np.hypot(self.xy[:, 0], self.xy[:, 1])

    @property
    def points(self) -> List[Point2D]:
        return [Point2D(float(x), float(y)) for x, y in self.xy]

    def groups(self) -> List[FloatArray]:
        """Per-cluster point sets in generation order."""
        return [self.xy[r.start:r.stop] for r in self.ranges]

    def counts_by_range(self) -> List[int]:
        return [r.stop - r.start for r in self.ranges]


@dataclass
class AutoConfig:
    """Inputs of automatic (uncontrolled) deployment.

    Attributes:
        cell_radius: L, radius of the circular cell
        max_layers: n_L-max, upper end of the layer-count range (>= 2)
        total_nodes: n_s, number of nodes to deploy

    Raises:
        ConfigurationError: If the configuration is invalid
    """
    cell_radius: float
    max_layers: int
    total_nodes: int

    def __post_init__(self) -> None:
        is_valid, error = self.validate()
        if not is_valid:
            raise ConfigurationError(f"Invalid automatic deployment configuration: {error}")

    def validate(self) -> ValidationResult:
        """Validate configuration values.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if not isinstance(self.cell_radius, (int, float)) or not math.isfinite(self.cell_radius):
            return False, "cell_radius must be a finite number"
        if self.cell_radius <= 0:
            return False, "cell_radius must be positive"
        if isinstance(self.max_layers, bool) or not isinstance(self.max_layers, int):
            return False, "max_layers must be an integer"
        if self.max_layers < 2:
            return False, "max_layers must be at least 2"
        if isinstance(self.total_nodes, bool) or not isinstance(self.total_nodes, int):
            return False, "total_nodes must be an integer"
        if self.total_nodes < 2:
            return False, "total_nodes must be at least 2 to fill two layers"
        return True, None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cell_radius": self.cell_radius,
            "max_layers": self.max_layers,
            "total_nodes": self.total_nodes,
        }


@dataclass
class AutoRealization:
    """One random outcome of automatic deployment.

    Attributes:
        config: The inputs that produced it
        n_layers: Drawn layer count, 2 <= n_L <= max_layers
        layer_radii: Ascending outer radii, the last equal to the cell radius
        n_inner: Nodes in the innermost layer
        n_outer: Nodes in every other layer
        deployment: The generated positions, one cluster per layer
    """
    config: AutoConfig
    n_layers: int
    layer_radii: List[float]
    n_inner: int
    n_outer: int
    deployment: Deployment

    @property
    def layer_counts(self) -> List[int]:
        return [self.n_inner] + [self.n_outer] * (self.n_layers - 1)

    @property
    def layer_widths(self) -> List[float]:
        edges = [0.0] + list(self.layer_radii)
        return [outer - inner for inner, outer in zip(edges, edges[1:])]

    @property
    def layer_sectors(self) -> List[RingSector]:
        edges = [0.0] + list(self.layer_radii)
        return [RingSector(inner, outer) for inner, outer in zip(edges, edges[1:])]

    def to_plan(self) -> NetworkPlan:
        """The realized layout as a single-sector-per-layer plan."""
        return NetworkPlan(layers=[
            LayerSpec(outer_radius=radius, sector_counts=[count])
            for radius, count in zip(self.layer_radii, self.layer_counts)
        ])
