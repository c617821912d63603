"""Settings and bundled reference data."""

from .settings import Settings, settings
from .scenarios import (
    AutoScale,
    DensityScenario,
    auto_scale,
    bundled_plan_path,
    density_scenario,
    load_reference_scenarios,
)

__all__ = [
    'Settings',
    'settings',
    'AutoScale',
    'DensityScenario',
    'auto_scale',
    'bundled_plan_path',
    'density_scenario',
    'load_reference_scenarios',
]
