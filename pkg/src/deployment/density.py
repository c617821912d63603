"""Bivariate-histogram density estimation.

A deployment surface [x_lo, x_hi] x [y_lo, y_hi] is cut into n_x by n_y
equal bins. Cells are half-open [edge, next edge) except that the top and
right boundaries are folded into the last bin, so every in-bounds point
lands in exactly one bin. Points outside the surface are counted, never
binned.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from ..models.reports import DensityReport
from ..utils.logger import log_execution_time
from .exceptions import EstimationError
from .geometry import RingSector, radial_pdf
from .models import Deployment
from .types import Bounds, FloatArray

PointsLike = Union[Deployment, FloatArray]

# Half-width given to both axes of a data box that collapses to one point
DEGENERATE_HALF_WIDTH = 0.5


def _as_xy(points: PointsLike) -> FloatArray:
    xy = points.xy if isinstance(points, Deployment) else np.asarray(points, dtype=float)
    if xy.size == 0:
        return np.empty((0, 2))
    if xy.ndim != 2 or xy.shape[1] != 2:
        raise EstimationError(f"points must be an (n, 2) array, got shape {xy.shape}")
    return xy


def _check_surface(bounds: Bounds, n_bins_x: int, n_bins_y: int) -> None:
    if not np.all(np.isfinite(bounds)):
        raise EstimationError(f"bounds must be finite, got {tuple(bounds)}")
    if not (bounds.x_lo < bounds.x_hi and bounds.y_lo < bounds.y_hi):
        raise EstimationError(f"bounds {tuple(bounds)} enclose zero area")
    if n_bins_x < 1 or n_bins_y < 1:
        raise EstimationError(f"resolution must be positive, got {n_bins_x} x {n_bins_y}")


@dataclass
class HistogramGrid:
    """Bin counts over a rectangular deployment surface.

    Attributes:
        bounds: Deployment surface
        n_bins_x: Resolution along x
        n_bins_y: Resolution along y
        counts: (n_bins_x, n_bins_y) integer counts, first index along x
        out_of_bounds: Points that fell outside the surface
    """
    bounds: Bounds
    n_bins_x: int
    n_bins_y: int
    counts: np.ndarray
    out_of_bounds: int = 0

    @property
    def bin_width_x(self) -> float:
        return self.bounds.width / self.n_bins_x

    @property
    def bin_width_y(self) -> float:
        return self.bounds.height / self.n_bins_y

    @property
    def bin_area(self) -> float:
        return self.bin_width_x * self.bin_width_y

    @property
    def x_centers(self) -> FloatArray:
        return self.bounds.x_lo + (np.arange(self.n_bins_x) + 0.5) * self.bin_width_x

    @property
    def y_centers(self) -> FloatArray:
        return self.bounds.y_lo + (np.arange(self.n_bins_y) + 0.5) * self.bin_width_y

    @property
    def binned(self) -> int:
        return int(self.counts.sum())

    @property
    def nonzero_bins(self) -> int:
        return int(np.count_nonzero(self.counts))

    def merge(self, other: "HistogramGrid") -> "HistogramGrid":
        """Add counts of a grid over the same surface and resolution."""
        if (self.bounds, self.n_bins_x, self.n_bins_y) != (other.bounds, other.n_bins_x, other.n_bins_y):
            raise EstimationError("cannot merge histograms over different grids")
        return HistogramGrid(
            bounds=self.bounds,
            n_bins_x=self.n_bins_x,
            n_bins_y=self.n_bins_y,
            counts=self.counts + other.counts,
            out_of_bounds=self.out_of_bounds + other.out_of_bounds,
        )


def _bin_points(xy: FloatArray, bounds: Bounds, n_bins_x: int, n_bins_y: int) -> Tuple[np.ndarray, int]:
    x, y = xy[:, 0], xy[:, 1]
    inside = (x >= bounds.x_lo) & (x <= bounds.x_hi) & (y >= bounds.y_lo) & (y <= bounds.y_hi)
    dx = bounds.width / n_bins_x
    dy = bounds.height / n_bins_y
    i = np.floor((x[inside] - bounds.x_lo) / dx).astype(np.int64)
    j = np.floor((y[inside] - bounds.y_lo) / dy).astype(np.int64)
    np.clip(i, 0, n_bins_x - 1, out=i)
    np.clip(j, 0, n_bins_y - 1, out=j)
    counts = np.bincount(i * n_bins_y + j, minlength=n_bins_x * n_bins_y)
    return counts.reshape(n_bins_x, n_bins_y).astype(np.int64), int(np.count_nonzero(~inside))


@log_execution_time
def build_histogram(
    points: PointsLike,
    bounds: Bounds,
    n_bins_x: int,
    n_bins_y: Optional[int] = None,
    workers: int = 1,
) -> HistogramGrid:
    """Count points per bin.

    Args:
        points: Deployment or (n, 2) array
        bounds: Deployment surface
        n_bins_x: Resolution along x
        n_bins_y: Resolution along y, defaults to n_bins_x
        workers: Above 1, points are split into chunks binned on separate
            threads and the partial grids are added together

    Raises:
        EstimationError: On zero-area bounds or non-positive resolution
    """
    n_bins_y = n_bins_x if n_bins_y is None else n_bins_y
    bounds = Bounds(*map(float, bounds))
    _check_surface(bounds, n_bins_x, n_bins_y)
    xy = _as_xy(points)

    if workers > 1 and len(xy) > workers:
        chunks = np.array_split(xy, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _bin_points(c, bounds, n_bins_x, n_bins_y), chunks))
        counts = sum(part[0] for part in parts)
        outside = sum(part[1] for part in parts)
    else:
        counts, outside = _bin_points(xy, bounds, n_bins_x, n_bins_y)

    if outside:
        logger.warning(f"{outside} of {len(xy)} points fall outside {tuple(bounds)} and were not binned")
    return HistogramGrid(bounds, n_bins_x, n_bins_y, counts, outside)


def number_density(n_points: int, area: float) -> float:
    """Nodes per unit area."""
    if area <= 0:
        raise EstimationError(f"area must be positive, got {area}")
    return n_points / area


def expected_bin_count(n_points: int, bin_area: float, area: float) -> float:
    """Mean occupancy n * A_bin / A of a bin inside a uniform region of area A."""
    return number_density(n_points, area) * bin_area


def analytical_mean_density(sector: RingSector, n_points: int, n_bins: int) -> float:
    """Expected count per occupied bin over the [-L2, L2]^2 grid of n_bins^2 bins.

    Equals 8 n / (n_bins^2 (a2 - a1) (1 - (L1/L2)^2)).
    """
    if n_bins < 1:
        raise EstimationError(f"n_bins must be positive, got {n_bins}")
    bin_side = 2.0 * sector.outer_radius / n_bins
    return expected_bin_count(n_points, bin_side**2, sector.area)


def empirical_mean_density(grid: HistogramGrid) -> Tuple[float, int]:
    """Mean count over bins with a nonzero count.

    Returns:
        (mean, n_xy) where n_xy is the number of nonzero bins

    Raises:
        EstimationError: If every bin is empty
    """
    n_xy = grid.nonzero_bins
    if n_xy == 0:
        raise EstimationError("histogram has no occupied bins")
    return grid.binned / n_xy, n_xy


def density_error(analytical: float, empirical: float) -> float:
    """Percentage error |empirical - analytical| / analytical * 100."""
    if analytical <= 0:
        raise EstimationError(f"analytical density must be positive, got {analytical}")
    return abs(empirical - analytical) / analytical * 100.0


def density_report(grid: HistogramGrid, analytical: Optional[float] = None) -> DensityReport:
    """Compare the empirical mean occupancy of ``grid`` with ``analytical``."""
    empirical, n_xy = empirical_mean_density(grid)
    error = density_error(analytical, empirical) if analytical is not None else None
    return DensityReport(analytical=analytical, empirical=empirical, n_xy=n_xy, error_pct=error)


def union_bounds(boxes: Iterable[Bounds]) -> Bounds:
    """Smallest surface holding every box."""
    boxes = list(boxes)
    if not boxes:
        raise EstimationError("no bounding boxes to combine")
    return Bounds(
        min(b.x_lo for b in boxes),
        max(b.x_hi for b in boxes),
        min(b.y_lo for b in boxes),
        max(b.y_hi for b in boxes),
    )


def deployment_groups(deployment: Deployment) -> Dict[Tuple[int, int], FloatArray]:
    """Split a deployment into per-cluster point sets keyed by (layer, sector) tag."""
    tags = np.column_stack((deployment.layer, deployment.sector))
    keys = [(int(l), int(s)) for l, s in np.unique(tags, axis=0)] if len(tags) else []
    return {
        key: deployment.xy[(deployment.layer == key[0]) & (deployment.sector == key[1])]
        for key in keys
    }


def data_bounds(xy: FloatArray) -> Bounds:
    """Bounding box of a non-empty point set."""
    return Bounds(
        float(xy[:, 0].min()), float(xy[:, 0].max()),
        float(xy[:, 1].min()), float(xy[:, 1].max()),
    )


def widen_degenerate(bounds: Bounds, half_width: float = DEGENERATE_HALF_WIDTH) -> Bounds:
    """Give a zero-width axis of a data box a nonzero extent.

    A flat axis is centered on its single value and takes the span of the
    other axis; when both axes are flat each gets ``half_width`` either side.
    """
    width, height = bounds.width, bounds.height
    if width > 0 and height > 0:
        return bounds
    x_half = width / 2 if width > 0 else (height / 2 if height > 0 else half_width)
    y_half = height / 2 if height > 0 else (width / 2 if width > 0 else half_width)
    x_mid = (bounds.x_lo + bounds.x_hi) / 2
    y_mid = (bounds.y_lo + bounds.y_hi) / 2
    widened = Bounds(x_mid - x_half, x_mid + x_half, y_mid - y_half, y_mid + y_half)
    logger.debug(f"Widened degenerate data box {tuple(bounds)} to {tuple(widened)}")
    return widened


@dataclass
class PdfGrid:
    """Gridded estimate of the spatial PDF.

    Attributes:
        grid: Aggregated counts over all clusters
        pdf: Estimated density per bin, same shape as grid.counts
        n_points: Total number of points over all clusters, binned or not
    """
    grid: HistogramGrid
    pdf: FloatArray
    n_points: int

    @property
    def riemann_sum(self) -> float:
        """Sum of pdf * bin area; equals binned / n_points."""
        return float(self.pdf.sum() * self.grid.bin_area)


def asd_pdf_estimate(
    clusters: Union[Deployment, Sequence[FloatArray]],
    n_bins_x: int,
    n_bins_y: Optional[int] = None,
    bounds: Optional[Bounds] = None,
    sectors: Optional[Sequence[RingSector]] = None,
) -> PdfGrid:
    """Estimate the PDF of a superposed multi-cluster deployment.

    Each cluster is histogrammed on the shared surface, counts are summed
    and normalized by n_S * bin area. Without explicit ``bounds`` the
    surface is the union of per-cluster boxes: the exact sector boxes when
    ``sectors`` is given, otherwise the boxes of the point sets, widened by
    widen_degenerate when they have no extent along an axis.

    Raises:
        EstimationError: If there are no points
    """
    if isinstance(clusters, Deployment):
        groups = list(deployment_groups(clusters).values())
    else:
        groups = list(clusters)
    groups = [_as_xy(g) for g in groups]
    n_points = sum(len(g) for g in groups)
    if n_points == 0:
        raise EstimationError("cannot estimate a density from zero points")
    n_bins_y = n_bins_x if n_bins_y is None else n_bins_y

    if bounds is None:
        if sectors is not None:
            bounds = union_bounds(s.bounding_box() for s in sectors)
        else:
            bounds = widen_degenerate(union_bounds(data_bounds(g) for g in groups if len(g)))

    grid: Optional[HistogramGrid] = None
    for group in groups:
        part = build_histogram(group, bounds, n_bins_x, n_bins_y)
        grid = part if grid is None else grid.merge(part)
    pdf = grid.counts / (n_points * grid.bin_area)
    return PdfGrid(grid=grid, pdf=pdf, n_points=n_points)


def radial_histogram(
    radii: FloatArray,
    sector: RingSector,
    n_bins: int = 100,
) -> Tuple[FloatArray, FloatArray, FloatArray]:
    """Empirical radial density on (L1, L2) next to the theoretical one.

    Returns:
        (bin centers, empirical density, 2r / (L2^2 - L1^2) at the centers)
    """
    density, edges = np.histogram(
        radii, bins=n_bins, range=(sector.inner_radius, sector.outer_radius), density=True
    )
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, density, radial_pdf(sector, centers)


def occupancy_fraction(grid: HistogramGrid) -> float:
    """Share of bins with a nonzero count."""
    return grid.nonzero_bins / (grid.n_bins_x * grid.n_bins_y)


__all__: List[str] = [
    "HistogramGrid",
    "PdfGrid",
    "analytical_mean_density",
    "asd_pdf_estimate",
    "build_histogram",
    "data_bounds",
    "widen_degenerate",
    "density_error",
    "density_report",
    "deployment_groups",
    "empirical_mean_density",
    "expected_bin_count",
    "number_density",
    "radial_histogram",
    "union_bounds",
]
