"""Performance tests for deployment and density estimation."""
from time import perf_counter

import numpy as np
import pytest

from src.deployment.controlled import deploy_controlled
from src.deployment.density import build_histogram
from src.deployment.models import AutoConfig
from src.deployment.types import Bounds
from src.deployment.uncontrolled import deploy_auto
from src.models.network_plan import LayerSpec, NetworkPlan

REPEATS = 5


def best_time(func, *args, **kwargs):
    """Fastest of several runs, to keep scheduler noise out of the ratio."""
    timings = []
    for _ in range(REPEATS):
        start = perf_counter()
        func(*args, **kwargs)
        timings.append(perf_counter() - start)
    return min(timings)


def scaled(plan, factor):
    return NetworkPlan(layers=[
        LayerSpec(
            outer_radius=layer.outer_radius,
            sector_bounds=list(layer.sector_bounds),
            sector_counts=[count * factor for count in layer.sector_counts],
        )
        for layer in plan.layers
    ])


@pytest.mark.performance
def test_controlled_deployment_scales_linearly(six_sector_plan):
    """Four times the nodes costs roughly four times the time."""
    small, large = scaled(six_sector_plan, 30), scaled(six_sector_plan, 120)
    ratio = best_time(deploy_controlled, large, seed=1) / best_time(deploy_controlled, small, seed=1)
    assert 3.0 <= ratio <= 5.5


@pytest.mark.performance
def test_auto_deployment_scales_linearly():
    small = AutoConfig(cell_radius=1.0, max_layers=10, total_nodes=100_000)
    large = AutoConfig(cell_radius=1.0, max_layers=10, total_nodes=400_000)
    ratio = best_time(deploy_auto, large, seed=4) / best_time(deploy_auto, small, seed=4)
    assert 3.0 <= ratio <= 5.5


@pytest.mark.performance
def test_histogram_of_one_million_points():
    xy = np.random.default_rng(1).uniform(-1.0, 1.0, size=(1_000_000, 2))
    assert best_time(build_histogram, xy, Bounds.square(1.0), 500) < 2.0
