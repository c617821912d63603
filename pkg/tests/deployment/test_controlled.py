"""Tests for controlled deployment."""
import math

import numpy as np
import pytest

from src.deployment.controlled import (
    check_deployment,
    deploy_controlled,
    membership_failures,
    sector_densities,
    sector_summary,
)
from src.deployment.exceptions import InvariantError, PlanValidationError
from src.deployment.geometry import sample_points
from src.deployment.plan import plan_digest, to_sectors
from src.deployment.rng import GENERATOR_NAME, SeededRng
from src.models.network_plan import LayerSpec, NetworkPlan


@pytest.mark.parametrize("plan_fixture", ["six_sector_plan", "ten_sector_plan"])
def test_count_conservation(plan_fixture, request):
    """Test exact per-sector counts for the reference plans."""
    plan = request.getfixturevalue(plan_fixture)
    deployment = deploy_controlled(plan, seed=1)
    assert len(deployment) == 3300
    expected = [c.count for c in to_sectors(plan)]
    assert deployment.counts_by_range() == expected
    for cluster in to_sectors(plan):
        tagged = (deployment.layer == cluster.layer) & (deployment.sector == cluster.index)
        assert int(tagged.sum()) == cluster.count


@pytest.mark.parametrize("plan_fixture", ["six_sector_plan", "ten_sector_plan"])
def test_membership(plan_fixture, request):
    plan = request.getfixturevalue(plan_fixture)
    deployment = deploy_controlled(plan, seed=2)
    assert membership_failures(deployment, to_sectors(plan)) == 0
    check_deployment(deployment, plan)


def test_deterministic(six_sector_plan):
    a = deploy_controlled(six_sector_plan, seed=9)
    b = deploy_controlled(six_sector_plan, seed=9)
    assert np.array_equal(a.xy, b.xy)
    assert not np.array_equal(a.xy, deploy_controlled(six_sector_plan, seed=10).xy)


def test_stream_order_is_layer_then_sector(two_layer_plan):
    """Test that sectors consume one stream in plan order."""
    deployment = deploy_controlled(two_layer_plan, seed=5)
    rng = SeededRng(5)
    expected = np.vstack([sample_points(c.sector, c.count, rng) for c in to_sectors(two_layer_plan)])
    assert np.array_equal(deployment.xy, expected)
    assert deployment.meta["draws"] == 2 * 60


def test_provenance(two_layer_plan):
    deployment = deploy_controlled(two_layer_plan, seed=5)
    assert deployment.seed == 5
    assert deployment.meta["mode"] == "controlled"
    assert deployment.meta["plan_digest"] == plan_digest(two_layer_plan)
    assert deployment.meta["generator"] == GENERATOR_NAME
    assert deployment.meta["stream"] == "serial"


def test_parallel_workers(ten_sector_plan):
    """Test that threaded generation is reproducible and conserves counts."""
    a = deploy_controlled(ten_sector_plan, seed=3, workers=4)
    b = deploy_controlled(ten_sector_plan, seed=3, workers=2)
    assert np.array_equal(a.xy, b.xy)
    assert a.meta["stream"] == "substream-per-cluster"
    assert a.counts_by_range() == [c.count for c in to_sectors(ten_sector_plan)]
    check_deployment(a, ten_sector_plan)


def test_zero_count_sector_is_skipped():
    plan = NetworkPlan(layers=[LayerSpec(outer_radius=1.0, sector_bounds=[math.pi], sector_counts=[0, 4])])
    deployment = deploy_controlled(plan, seed=1)
    assert len(deployment) == 4
    assert set(deployment.sector.tolist()) == {1}


def test_invalid_plan_rejected():
    plan = NetworkPlan(layers=[LayerSpec(outer_radius=1.0, sector_bounds=[1.0], sector_counts=[1])])
    with pytest.raises(PlanValidationError):
        deploy_controlled(plan)


def test_sector_densities(two_layer_plan):
    densities = sector_densities(two_layer_plan)
    assert densities[0] == pytest.approx(10 / math.pi)
    assert densities[1] == pytest.approx(20 / (1.5 * math.pi))
    assert densities[2] == pytest.approx(30 / (1.5 * math.pi))


def test_six_sector_densest_region(six_sector_plan):
    """Test that the 800-node sector on a third of a turn is the densest."""
    densities = sector_densities(six_sector_plan)
    assert int(np.argmax(densities)) == 1
    assert densities[1] == pytest.approx(800 / (math.pi / 2))
    assert densities[2] == pytest.approx(1000 / math.pi)


def test_sector_summary(two_layer_plan):
    deployment = deploy_controlled(two_layer_plan, seed=4)
    rows = sector_summary(deployment, two_layer_plan)
    assert [(r["layer"], r["sector"], r["planned"], r["generated"]) for r in rows] == [
        (0, 0, 10, 10), (1, 0, 20, 20), (1, 1, 30, 30),
    ]
    assert rows[1]["area"] == pytest.approx(1.5 * math.pi)


def test_check_detects_misplaced_points(two_layer_plan):
    deployment = deploy_controlled(two_layer_plan, seed=4)
    deployment.xy[0] = [5.0, 5.0]
    with pytest.raises(InvariantError) as exc_info:
        check_deployment(deployment, two_layer_plan)
    assert exc_info.value.details["failures"] == 1


def test_check_detects_count_mismatch(two_layer_plan, six_sector_plan):
    deployment = deploy_controlled(two_layer_plan, seed=4)
    with pytest.raises(InvariantError):
        check_deployment(deployment, six_sector_plan)


@pytest.mark.slow
def test_membership_at_scale():
    """Test sector membership over a million points at 1e-12 tolerance."""
    plan = NetworkPlan(layers=[
        LayerSpec(outer_radius=0.5, sector_counts=[100_000]),
        LayerSpec(outer_radius=1.3, sector_bounds=["5pi/9", "14pi/9"], sector_counts=[200_000, 150_000, 150_000]),
        LayerSpec(outer_radius=3.5, sector_bounds=["pi"], sector_counts=[250_000, 150_000]),
    ])
    deployment = deploy_controlled(plan, seed=11)
    assert len(deployment) == 1_000_000
    assert membership_failures(deployment, to_sectors(plan), tolerance=1e-12) == 0
