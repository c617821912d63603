# tests/conftest.py
import math
from typing import List

import pytest
from loguru import logger

from src.config.scenarios import bundled_plan_path
from src.deployment.geometry import RingSector
from src.deployment.plan import load_plan_file
from src.deployment.rng import SeededRng
from src.models.network_plan import LayerSpec, NetworkPlan


@pytest.fixture
def rng():
    """Fresh stream with a fixed test seed."""
    return SeededRng(7)


@pytest.fixture
def unit_disk():
    return RingSector(0.0, 1.0)


@pytest.fixture
def quarter_ring():
    return RingSector(0.5, 1.0, 0.0, math.pi / 2)


@pytest.fixture(scope="session")
def six_sector_plan():
    """Three-layer plan with a four-sector middle layer, 3300 nodes."""
    return load_plan_file(bundled_plan_path("six-sector"))


@pytest.fixture(scope="session")
def ten_sector_plan():
    """Four-layer plan with ten sectors, 3300 nodes."""
    return load_plan_file(bundled_plan_path("ten-sector"))


@pytest.fixture
def two_layer_plan():
    return NetworkPlan(layers=[
        LayerSpec(outer_radius=1.0, sector_counts=[10]),
        LayerSpec(outer_radius=2.0, sector_bounds=[math.pi], sector_counts=[20, 30]),
    ])


@pytest.fixture
def log_messages():
    """Collect loguru messages emitted during a test."""
    messages: List[str] = []
    handler_id = logger.add(lambda message: messages.append(message.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
