"""End-to-end checks against the published density-validation figures."""
import json

import numpy as np
import pytest

from src.cli.app import EXIT_OK, main
from src.cli.commands import cmd_report
from src.config.scenarios import load_reference_scenarios
from src.core.artifacts import read_grid
from src.deployment.density import analytical_mean_density, build_histogram, density_report
from src.deployment.geometry import RingSector, sample_points
from src.deployment.rng import SeededRng
from src.deployment.types import Bounds


def run(*argv):
    return main(["--log-level", "WARNING", *map(str, argv)])


@pytest.mark.parametrize("row", load_reference_scenarios().density_rows, ids=lambda row: row.name)
def test_published_analytical_values(row):
    sector = RingSector(row.inner_radius, row.outer_radius, row.angle_lo, row.angle_hi)
    assert sector.area == pytest.approx(row.area, abs=1e-4)
    assert analytical_mean_density(sector, row.samples, row.bins) == pytest.approx(row.analytical, abs=1e-4)


@pytest.mark.slow
@pytest.mark.parametrize("sector,expected", [
    (RingSector(0.0, 1.0), 5.09296),
    (RingSector(0.7, 1.0), 9.9862),
])
def test_full_cell_and_ring_at_one_million(sector, expected):
    """10^6 points at 500 bins stay within 3% of the analytical mean."""
    n = 1_000_000
    analytical = analytical_mean_density(sector, n, 500)
    assert analytical == pytest.approx(expected, abs=1e-4)
    grid = build_histogram(sample_points(sector, n, SeededRng(2012)), Bounds.square(1.0), 500)
    report = density_report(grid, analytical)
    assert report.error_pct <= 3.0


@pytest.mark.slow
def test_full_report_table(tmp_path):
    """Every published row reproduces within twice its published error or 3%."""
    out = tmp_path / "table.json"
    summary = cmd_report(out=str(out), seed=20120917, workers=2)
    table = json.loads(out.read_text())
    assert summary["rows"] == 6
    for row in table["rows"]:
        assert row["report"]["analytical"] == pytest.approx(row["published_analytical"], abs=1e-4)
        assert row["report"]["error_pct"] <= max(3.0, 2 * row["published_error_pct"])


def test_controlled_pipeline_normalizes(tmp_path):
    """deploy-controlled -> density -> plot on the six-sector plan."""
    points = tmp_path / "six.csv"
    grid_path = tmp_path / "six-grid.json"
    assert run("deploy-controlled", "--scenario", "six-sector", "--seed", 5, "--out", points) == EXIT_OK
    assert run("density", "--points", points, "--bins", 25, "--out", grid_path) == EXIT_OK
    assert run("plot", "--input", grid_path, "--out", tmp_path / "six.py") == EXIT_OK

    grid, pdf = read_grid(grid_path)
    assert grid.counts.sum() == 3300
    assert np.sum(pdf) * grid.bin_area == pytest.approx(1.0, abs=1e-9)

    summary = json.loads((tmp_path / "six.summary.json").read_text())
    densities = [row["density"] for row in summary["sectors"]]
    assert int(np.argmax(densities)) == 1


def test_auto_pipeline_summary_matches_points(tmp_path):
    points = tmp_path / "auto.csv"
    assert run("deploy-auto", "--scenario", "large", "--seed", 8, "--out", points) == EXIT_OK
    assert run("density", "--points", points, "--bins", 40, "--out", tmp_path / "grid.csv") == EXIT_OK

    summary = json.loads((tmp_path / "auto.summary.json").read_text())
    assert sum(layer["nodes"] for layer in summary["layers"]) == 5000
    assert summary["layer_radii"][-1] == 1.0
    grid, pdf = read_grid(tmp_path / "grid.csv")
    assert grid.counts.sum() == 5000
