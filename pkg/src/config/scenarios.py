# src/config/scenarios.py
"""Bundled reference plans and validation scenarios."""
from functools import lru_cache
import json
from pathlib import Path
from typing import Dict, List, Union

from pydantic import BaseModel, field_validator

from ..models.network_plan import parse_angle

CONFIG_DIR = Path(__file__).parent
PLANS_DIR = CONFIG_DIR / "plans"
SCENARIOS_FILE = CONFIG_DIR / "reference_scenarios.json"

BUNDLED_PLANS: Dict[str, str] = {
    "six-sector": "six_sector.json",
    "ten-sector": "ten_sector.json",
}


class DensityScenario(BaseModel):
    """Single-sector density-validation row with its published figures.

    Sector parameters are reconstructed so that the sector area matches the
    published A_RS to four decimals.
    """
    name: str
    inner_radius: float
    outer_radius: float
    angle_lo: float
    angle_hi: float
    samples: int
    bins: int
    area: float
    number_density_e6: float
    analytical: float
    simulation: float
    error_pct: float

    @field_validator("angle_lo", "angle_hi", mode="before")
    @classmethod
    def _parse_angle(cls, value: Union[str, float]) -> float:
        return parse_angle(value)


class AutoScale(BaseModel):
    """Automatic-deployment input triple."""
    name: str
    cell_radius: float
    max_layers: int
    total_nodes: int


class ReferenceScenarios(BaseModel):
    density_rows: List[DensityScenario]
    auto_scales: List[AutoScale]


def bundled_plan_path(name: str) -> Path:
    """Path of a bundled plan file.

    Raises:
        KeyError: If no plan is bundled under ``name``
    """
    if name not in BUNDLED_PLANS:
        raise KeyError(f"unknown bundled plan '{name}', choose from {sorted(BUNDLED_PLANS)}")
    return PLANS_DIR / BUNDLED_PLANS[name]


@lru_cache(maxsize=1)
def load_reference_scenarios() -> ReferenceScenarios:
    return ReferenceScenarios.model_validate(json.loads(SCENARIOS_FILE.read_text(encoding="utf-8")))


def density_scenario(name: str) -> DensityScenario:
    for row in load_reference_scenarios().density_rows:
        if row.name == name:
            return row
    raise KeyError(f"unknown density scenario '{name}'")


def auto_scale(name: str) -> AutoScale:
    for scale in load_reference_scenarios().auto_scales:
        if scale.name == name:
            return scale
    raise KeyError(f"unknown automatic-deployment scale '{name}'")
