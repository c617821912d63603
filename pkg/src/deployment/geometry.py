"""Ring-sector geometry and exact inverse-CDF sampling.

A ring sector is the region between radii L1 < L2 and angles a1 < a2 around
the origin. Uniform positions over it are drawn in polar form: the radius
through the inverse of the radial CDF ``(r^2 - L1^2) / (L2^2 - L1^2)`` and
the angle affinely, each from its own uniform draw. Per point the radius
draw always comes first.
"""
from dataclasses import dataclass
import math
from typing import Tuple, Union, overload

import numpy as np

from ..config.settings import settings
from .exceptions import SectorValidationError
from .rng import SeededRng
from .types import Bounds, FloatArray, Point2D, ValidationResult

TWO_PI = 2.0 * math.pi

ArrayLike = Union[float, FloatArray]


@dataclass(frozen=True)
class RingSector:
    """Geometric support of one deployment cluster.

    Attributes:
        inner_radius: L1, must satisfy 0 <= L1 < L2
        outer_radius: L2
        angle_lo: a1 in radians, 0 <= a1 < a2
        angle_hi: a2 in radians, a2 <= 2*pi

    Raises:
        SectorValidationError: If any bound is violated, including the
            degenerate cases L1 == L2 and a1 == a2
    """
    inner_radius: float
    outer_radius: float
    angle_lo: float = 0.0
    angle_hi: float = TWO_PI

    def __post_init__(self) -> None:
        is_valid, error = self.validate()
        if not is_valid:
            raise SectorValidationError(f"Invalid ring sector: {error}")

    def validate(self) -> ValidationResult:
        """Validate the sector bounds.

        Returns:
            Tuple of (is_valid, error_message)
        """
        values = (self.inner_radius, self.outer_radius, self.angle_lo, self.angle_hi)
        if not all(math.isfinite(v) for v in values):
            return False, "bounds must be finite"
        if self.inner_radius < 0:
            return False, f"inner_radius {self.inner_radius} < 0"
        if not self.inner_radius < self.outer_radius:
            return False, (
                f"inner_radius {self.inner_radius} must be < outer_radius {self.outer_radius}"
            )
        if self.angle_lo < 0:
            return False, f"angle_lo {self.angle_lo} < 0"
        if not self.angle_lo < self.angle_hi:
            return False, f"angle_lo {self.angle_lo} must be < angle_hi {self.angle_hi}"
        if self.angle_hi > TWO_PI:
            return False, f"angle_hi {self.angle_hi} > 2*pi"
        return True, None

    @property
    def area(self) -> float:
        return sector_area(self)

    @property
    def span(self) -> float:
        """Angular width a2 - a1."""
        return self.angle_hi - self.angle_lo

    @property
    def is_full_ring(self) -> bool:
        return self.angle_lo == 0.0 and self.angle_hi == TWO_PI

    def contains(
        self,
        x: ArrayLike,
        y: ArrayLike,
        tolerance: float = settings.MEMBERSHIP_TOLERANCE,
    ) -> Union[bool, np.ndarray]:
        """Membership predicate of the closed sector.

        Radii are compared with ``tolerance`` in length units and angles with
        ``tolerance`` radians, absorbing the polar/Cartesian round trip.
        Points at the origin belong to any sector with L1 == 0.
        """
        radius, angle = to_polar(x, y)
        radial_ok = (radius >= self.inner_radius - tolerance) & (
            radius <= self.outer_radius + tolerance
        )
        lo, hi = self.angle_lo - tolerance, self.angle_hi + tolerance
        # atan2 folds angles just below 2*pi onto ~0, so test both windings
        angular_ok = ((angle >= lo) & (angle <= hi)) | (
            (angle + TWO_PI >= lo) & (angle + TWO_PI <= hi)
        )
        angular_ok = angular_ok | (radius <= tolerance)
        result = radial_ok & angular_ok
        return bool(result) if np.ndim(result) == 0 else result

    def bounding_box(self) -> Bounds:
        """Smallest axis-aligned box holding the sector."""
        angles = [self.angle_lo, self.angle_hi]
        angles += [k * math.pi / 2 for k in range(5) if self.angle_lo < k * math.pi / 2 < self.angle_hi]
        xs, ys = [], []
        for radius in (self.inner_radius, self.outer_radius):
            for angle in angles:
                xs.append(radius * math.cos(angle))
                ys.append(radius * math.sin(angle))
        return Bounds(min(xs), max(xs), min(ys), max(ys))


def sector_area(sector: RingSector) -> float:
    """Area (L2^2 - L1^2)(a2 - a1) / 2 of the sector."""
    return (
        (sector.outer_radius**2 - sector.inner_radius**2) * (sector.angle_hi - sector.angle_lo) / 2.0
    )


@overload
def radial_pdf(sector: RingSector, r: float) -> float: ...
@overload
def radial_pdf(sector: RingSector, r: FloatArray) -> FloatArray: ...
def radial_pdf(sector, r):
    """Marginal radial density 2r / (L2^2 - L1^2) on [L1, L2], zero elsewhere."""
    r_arr = np.asarray(r, dtype=float)
    spread = sector.outer_radius**2 - sector.inner_radius**2
    inside = (r_arr >= sector.inner_radius) & (r_arr <= sector.outer_radius)
    density = np.where(inside, 2.0 * r_arr / spread, 0.0)
    return float(density) if density.ndim == 0 else density


@overload
def radial_cdf(sector: RingSector, r: float) -> float: ...
@overload
def radial_cdf(sector: RingSector, r: FloatArray) -> FloatArray: ...
def radial_cdf(sector, r):
    """Radial CDF (r^2 - L1^2) / (L2^2 - L1^2) clamped to [0, 1]."""
    r_arr = np.asarray(r, dtype=float)
    spread = sector.outer_radius**2 - sector.inner_radius**2
    below = r_arr < sector.inner_radius
    prob = np.clip((r_arr**2 - sector.inner_radius**2) / spread, 0.0, 1.0)
    prob = np.where(below, 0.0, prob)
    return float(prob) if prob.ndim == 0 else prob


def radius_from_uniform(sector: RingSector, u: ArrayLike) -> ArrayLike:
    """Inverse radial CDF sqrt(L1^2 + u(L2^2 - L1^2)), kept strictly inside (L1, L2)."""
    inner, outer = sector.inner_radius, sector.outer_radius
    r = np.sqrt(inner**2 + np.asarray(u, dtype=float) * (outer**2 - inner**2))
    r = np.clip(r, np.nextafter(inner, np.inf), np.nextafter(outer, -np.inf))
    return float(r) if r.ndim == 0 else r


def angle_from_uniform(sector: RingSector, v: ArrayLike) -> ArrayLike:
    """Affine angle map a1 + v(a2 - a1), kept strictly inside (a1, a2)."""
    theta = sector.angle_lo + np.asarray(v, dtype=float) * sector.span
    theta = np.clip(
        theta,
        np.nextafter(sector.angle_lo, np.inf),
        np.nextafter(sector.angle_hi, -np.inf),
    )
    return float(theta) if theta.ndim == 0 else theta


def to_cartesian(radius: ArrayLike, angle: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Polar to Cartesian."""
    return radius * np.cos(angle), radius * np.sin(angle)


def to_polar(x: ArrayLike, y: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
    """Cartesian to polar with the angle folded into [0, 2*pi)."""
    radius = np.hypot(x, y)
    angle = np.mod(np.arctan2(y, x), TWO_PI)
    return radius, angle


def sample_radius(sector: RingSector, rng: SeededRng) -> float:
    """Draw one radius; consumes one uniform."""
    return radius_from_uniform(sector, rng.uniform())


def sample_angle(sector: RingSector, rng: SeededRng) -> float:
    """Draw one angle; consumes one uniform."""
    return angle_from_uniform(sector, rng.uniform())


def sample_point(sector: RingSector, rng: SeededRng) -> Point2D:
    """Draw one uniform position; consumes two uniforms, radius first."""
    x, y = sample_points(sector, 1, rng)[0]
    return Point2D(float(x), float(y))


def sample_polar(sector: RingSector, n: int, rng: SeededRng) -> Tuple[FloatArray, FloatArray]:
    """Draw ``n`` (radius, angle) pairs in the same stream layout as sample_point."""
    draws = rng.uniforms(2 * n).reshape(n, 2)
    return radius_from_uniform(sector, draws[:, 0]), angle_from_uniform(sector, draws[:, 1])


def sample_points(sector: RingSector, n: int, rng: SeededRng) -> FloatArray:
    """Draw ``n`` uniform positions as an (n, 2) array.

    The stream is consumed exactly as ``n`` successive sample_point calls
    would consume it.
    """
    if n < 0:
        raise ValueError("number of points must be non-negative")
    radius, angle = sample_polar(sector, n, rng)
    x, y = to_cartesian(radius, angle)
    return np.column_stack((x, y))
