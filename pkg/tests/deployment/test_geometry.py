"""Tests for ring-sector geometry and inverse-CDF sampling."""
import math

from hypothesis import given, settings as hyp_settings, strategies as st
import numpy as np
import pytest
from scipy import stats
from scipy.integrate import trapezoid

from src.deployment.exceptions import SectorValidationError
from src.deployment.geometry import (
    TWO_PI,
    RingSector,
    angle_from_uniform,
    radial_cdf,
    radial_pdf,
    radius_from_uniform,
    sample_angle,
    sample_point,
    sample_points,
    sample_polar,
    sample_radius,
    sector_area,
    to_polar,
)
from src.deployment.rng import SeededRng
from src.deployment.types import Bounds


@st.composite
def ring_sectors(draw):
    inner = draw(st.floats(0.0, 5.0))
    outer = inner + draw(st.floats(1e-3, 5.0))
    lo = draw(st.floats(0.0, TWO_PI - 1e-3))
    hi = lo + max(draw(st.floats(0.0, 1.0)), 1e-3) * (TWO_PI - lo)
    return RingSector(inner, outer, lo, min(hi, TWO_PI))


# Area

def test_unit_disk_area(unit_disk):
    assert sector_area(unit_disk) == pytest.approx(math.pi)


def test_ring_sector_area():
    """Test the (L2^2 - L1^2)(a2 - a1)/2 formula on published geometries."""
    assert sector_area(RingSector(0.6, 1.0, math.pi / 6, 4 * math.pi / 9)) == pytest.approx(0.2793, abs=1e-4)
    assert sector_area(RingSector(0.7, 1.0)) == pytest.approx(1.6022, abs=1e-4)
    assert sector_area(RingSector(0.0, 1.0, math.pi / 6, 8 * math.pi / 9)) == pytest.approx(1.1345, abs=1e-4)


@pytest.mark.parametrize("bounds", [
    (1.0, 1.0, 0.0, TWO_PI),
    (1.0, 0.5, 0.0, TWO_PI),
    (-0.1, 1.0, 0.0, TWO_PI),
    (0.0, 1.0, 1.0, 1.0),
    (0.0, 1.0, -0.1, 1.0),
    (0.0, 1.0, 0.0, TWO_PI + 0.1),
    (0.0, float("nan"), 0.0, 1.0),
])
def test_invalid_sectors_rejected(bounds):
    with pytest.raises(SectorValidationError):
        RingSector(*bounds)


# Radial law

def test_radial_pdf_integrates_to_one(quarter_ring):
    r = np.linspace(quarter_ring.inner_radius, quarter_ring.outer_radius, 10_001)
    assert trapezoid(radial_pdf(quarter_ring, r), r) == pytest.approx(1.0, abs=1e-6)


def test_radial_pdf_zero_outside(quarter_ring):
    assert radial_pdf(quarter_ring, 0.2) == 0.0
    assert radial_pdf(quarter_ring, 1.5) == 0.0
    assert radial_pdf(quarter_ring, 0.75) == pytest.approx(2 * 0.75 / 0.75)


def test_radial_cdf_endpoints(quarter_ring):
    assert radial_cdf(quarter_ring, 0.0) == 0.0
    assert radial_cdf(quarter_ring, 0.5) == 0.0
    assert radial_cdf(quarter_ring, 1.0) == 1.0
    assert radial_cdf(quarter_ring, 3.0) == 1.0


def test_inverse_cdf_inverts_cdf(quarter_ring):
    u = np.linspace(0.01, 0.99, 99)
    assert np.allclose(radial_cdf(quarter_ring, radius_from_uniform(quarter_ring, u)), u)


def test_disk_median_radius(unit_disk):
    """Test that half the disk mass lies within 1/sqrt(2)."""
    assert radius_from_uniform(unit_disk, 0.5) == pytest.approx(1 / math.sqrt(2))


def test_inverse_maps_stay_strictly_inside():
    sector = RingSector(0.5, 1.0, 1.0, 2.0)
    assert 0.5 < radius_from_uniform(sector, 0.0) < 1.0
    assert 0.5 < radius_from_uniform(sector, 1.0) < 1.0
    assert 1.0 < angle_from_uniform(sector, 0.0) < 2.0
    assert 1.0 < angle_from_uniform(sector, 1.0) < 2.0


# Sampling

def test_sample_point_draws_radius_first():
    """Test that a point uses the first uniform for radius, the second for angle."""
    sector = RingSector(0.2, 1.0, 0.5, 2.5)
    u, v = SeededRng(11).uniforms(2)
    point = sample_point(sector, SeededRng(11))
    r = radius_from_uniform(sector, u)
    theta = angle_from_uniform(sector, v)
    assert point.x == pytest.approx(r * math.cos(theta), abs=1e-15)
    assert point.y == pytest.approx(r * math.sin(theta), abs=1e-15)


def test_sample_radius_and_angle_consume_one_draw_each(unit_disk):
    rng = SeededRng(3)
    sample_radius(unit_disk, rng)
    sample_angle(unit_disk, rng)
    assert rng.draws == 2


def test_vectorized_sampling_matches_single_points(quarter_ring):
    """Test that sample_points consumes the stream like repeated sample_point."""
    batch = sample_points(quarter_ring, 25, SeededRng(42))
    rng = SeededRng(42)
    singles = np.array([sample_point(quarter_ring, rng) for _ in range(25)])
    np.testing.assert_allclose(batch, singles, rtol=0, atol=1e-15)


def test_sample_points_shape_and_empty(unit_disk, rng):
    assert sample_points(unit_disk, 10, rng).shape == (10, 2)
    assert sample_points(unit_disk, 0, rng).shape == (0, 2)


def test_sample_points_rejects_negative(unit_disk, rng):
    with pytest.raises(ValueError):
        sample_points(unit_disk, -1, rng)


def test_full_disk_points_inside(unit_disk):
    xy = sample_points(unit_disk, 1000, SeededRng(7))
    assert np.all(np.hypot(xy[:, 0], xy[:, 1]) <= 1.0)


@given(sector=ring_sectors(), seed=st.integers(0, 2**32))
@hyp_settings(max_examples=50, deadline=None)
def test_samples_stay_in_sector(sector, seed):
    """Property: sampled points always satisfy the membership predicate."""
    xy = sample_points(sector, 200, SeededRng(seed))
    assert np.all(sector.contains(xy[:, 0], xy[:, 1]))


@pytest.mark.parametrize("inner", [0.0, 0.25, 0.5, 0.75])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_radii_follow_radial_law(inner, seed):
    """KS test of sampled radii against the radial CDF."""
    sector = RingSector(inner, 1.0)
    radii, _ = sample_polar(sector, 100_000, SeededRng(seed))
    result = stats.kstest(radii, lambda r: radial_cdf(sector, r))
    assert result.pvalue > 0.01


def test_angles_uniform(quarter_ring):
    _, angles = sample_polar(quarter_ring, 50_000, SeededRng(4))
    scaled = (angles - quarter_ring.angle_lo) / quarter_ring.span
    assert stats.kstest(scaled, "uniform").pvalue > 0.01


@pytest.mark.parametrize("sector", [
    RingSector(0.0, 1.0),
    RingSector(0.6, 1.0, math.pi / 6, 4 * math.pi / 9),
])
def test_angles_pass_chi_square(sector):
    """100-bin chi-square of 10^5 angles against U(a1, a2)."""
    _, angles = sample_polar(sector, 100_000, SeededRng(9))
    observed, _ = np.histogram(angles, bins=100, range=(sector.angle_lo, sector.angle_hi))
    assert observed.sum() == 100_000
    assert stats.chisquare(observed, np.full(100, 1_000)).pvalue > 0.01


@pytest.mark.parametrize("sector", [
    RingSector(0.0, 1.0),
    RingSector(0.5, 1.0, 0.0, math.pi / 2),
    RingSector(1.0, 2.0, math.pi / 3, math.pi),
])
def test_radius_and_angle_uncorrelated(sector):
    radii, angles = sample_polar(sector, 100_000, SeededRng(12))
    assert abs(np.corrcoef(radii, angles)[0, 1]) < 0.02


# Membership and bounding boxes

def test_contains_boundaries(quarter_ring):
    assert quarter_ring.contains(0.75, 0.0)
    assert quarter_ring.contains(0.0, 1.0)
    assert not quarter_ring.contains(0.3, 0.0)
    assert not quarter_ring.contains(-0.75, 0.0)


def test_contains_wraps_full_turn():
    """Test that a point just below the positive x axis is in a sector ending at 2*pi."""
    sector = RingSector(0.0, 1.0, 3 * math.pi / 2, TWO_PI)
    assert sector.contains(0.5, -1e-14)
    assert sector.contains(0.5, 0.0)


def test_origin_belongs_to_disk(unit_disk):
    assert unit_disk.contains(0.0, 0.0)


def test_to_polar_range():
    _, angle = to_polar(np.array([1.0, -1.0, 0.0]), np.array([0.0, 0.0, -1.0]))
    assert np.allclose(angle, [0.0, math.pi, 3 * math.pi / 2])


def test_bounding_boxes():
    assert RingSector(0.0, 1.0).bounding_box() == pytest.approx(Bounds(-1.0, 1.0, -1.0, 1.0))
    box = RingSector(0.5, 1.0, 0.0, math.pi / 2).bounding_box()
    assert box == pytest.approx(Bounds(0.0, 1.0, 0.0, 1.0))
    box = RingSector(1.0, 2.0, math.pi / 3, math.pi).bounding_box()
    assert box.x_lo == pytest.approx(-2.0)
    assert box.x_hi == pytest.approx(1.0)
    assert box.y_lo == pytest.approx(0.0, abs=1e-12)
    assert box.y_hi == pytest.approx(2.0)
