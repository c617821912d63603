"""Subcommand implementations.

Each command takes fully resolved options as keyword arguments, writes its
artifacts atomically and returns a summary dict. Exceptions propagate to the
caller, which maps them onto exit codes.
"""
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from loguru import logger
import numpy as np

from ..config.scenarios import bundled_plan_path, density_scenario, auto_scale, load_reference_scenarios
from ..config.settings import settings
from ..core.artifacts import (
    atomic_write_text,
    read_points_csv,
    write_grid,
    write_json,
    write_points_csv,
)
from ..deployment.controlled import check_deployment, deploy_controlled, membership_failures, sector_summary
from ..deployment.density import (
    analytical_mean_density,
    asd_pdf_estimate,
    build_histogram,
    density_report,
    number_density,
)
from ..deployment.exceptions import ConfigurationError, EstimationError, InvariantError
from ..deployment.geometry import TWO_PI, RingSector, sample_points
from ..deployment.models import AutoConfig, Deployment
from ..deployment.plan import load_plan_file, plan_digest
from ..deployment.rng import SeededRng
from ..deployment.superposition import Cluster
from ..deployment.types import Bounds, LayerSummaryDict, SectorRange
from ..deployment.uncontrolled import deploy_auto, layer_densities
from ..models.network_plan import parse_angle
from ..models.reports import ReferenceRowResult
from .plotting import plot_script

Angle = Union[str, float]

# Command-line angles above 2*pi by at most this much are rounded down to 2*pi
ANGLE_SNAP_TOLERANCE = 1e-4


def _angle(name: str, value: Angle) -> float:
    try:
        angle = parse_angle(value)
    except ValueError as e:
        raise ConfigurationError(f"{name}: {e}") from e
    if TWO_PI < angle <= TWO_PI + ANGLE_SNAP_TOLERANCE:
        logger.warning(f"{name}={value} exceeds 2*pi by {angle - TWO_PI:.2g}; using 2*pi")
        return TWO_PI
    return angle


def _sidecar(out: Union[str, Path], kind: str) -> Path:
    """``points.csv`` -> ``points.<kind>.json``."""
    out = Path(out)
    return out.with_name(f"{out.stem}.{kind}.json")


def _require_positive(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
    return value


def _check_membership(deployment: Deployment, clusters: List[Cluster]) -> None:
    failures = membership_failures(deployment, clusters)
    if failures:
        raise InvariantError(f"{failures} points fall outside their tagged sector", {"failures": failures})


def cmd_sample_ring(
    out: str,
    l1: float = 0.0,
    l2: float = 1.0,
    a1: Angle = 0.0,
    a2: Angle = "2pi",
    n: int = 1000,
    seed: int = settings.DEFAULT_SEED,
    scenario: Optional[str] = None,
) -> Dict[str, Any]:
    """Sample ``n`` uniform points over one ring sector.

    ``scenario`` names a bundled density-validation row; its geometry and
    sample size replace l1, l2, a1, a2 and n.
    """
    if scenario is not None:
        try:
            row = density_scenario(scenario)
        except KeyError as e:
            raise ConfigurationError(str(e.args[0])) from e
        l1, l2, a1, a2, n = row.inner_radius, row.outer_radius, row.angle_lo, row.angle_hi, row.samples
    n = _require_positive("n", n)
    sector = RingSector(float(l1), float(l2), _angle("a1", a1), _angle("a2", a2))
    rng = SeededRng(seed)

    xy = sample_points(sector, n, rng)
    deployment = Deployment(
        xy=xy,
        layer=np.zeros(n, dtype=np.int64),
        sector=np.zeros(n, dtype=np.int64),
        seed=seed,
        ranges=[SectorRange(0, 0, 0, n)],
        meta={"mode": "single-sector"},
    )
    _check_membership(deployment, [Cluster(sector, n, 0, 0)])
    write_points_csv(out, deployment)
    logger.info(f"Sampled {n} points over sector area {sector.area:.6g} into {out}")
    return {"points": n, "area": sector.area, "number_density": number_density(n, sector.area)}


def cmd_deploy_controlled(
    out: str,
    plan: Optional[str] = None,
    scenario: Optional[str] = None,
    seed: int = settings.DEFAULT_SEED,
    workers: int = settings.WORKERS,
) -> Dict[str, Any]:
    """Run a controlled deployment and write points plus a per-sector summary.

    ``scenario`` selects a bundled plan (``six-sector`` or ``ten-sector``)
    when no plan file is given.
    """
    if plan is None:
        if scenario is None:
            raise ConfigurationError("deploy-controlled needs --plan or --scenario")
        try:
            plan = str(bundled_plan_path(scenario))
        except KeyError as e:
            raise ConfigurationError(str(e.args[0])) from e
    network_plan = load_plan_file(plan)
    deployment = deploy_controlled(network_plan, seed=seed, workers=_require_positive("workers", workers))
    check_deployment(deployment, network_plan)

    write_points_csv(out, deployment)
    summary = {
        "plan_digest": plan_digest(network_plan),
        "seed": seed,
        "total_nodes": len(deployment),
        "gamma": network_plan.gamma,
        "k_l": network_plan.k_l,
        "stream": deployment.meta["stream"],
        "sectors": sector_summary(deployment, network_plan),
    }
    summary_path = write_json(_sidecar(out, "summary"), summary)
    return {"points": len(deployment), "summary": str(summary_path)}


def cmd_deploy_auto(
    out: str,
    cell_radius: float = 1.0,
    max_layers: int = 5,
    total_nodes: int = 100,
    scenario: Optional[str] = None,
    seed: int = settings.DEFAULT_SEED,
    workers: int = settings.WORKERS,
) -> Dict[str, Any]:
    """Run an automatic deployment and write points plus a realization summary.

    ``scenario`` names one of the bundled scales (small, medium, large).
    """
    if scenario is not None:
        try:
            scale = auto_scale(scenario)
        except KeyError as e:
            raise ConfigurationError(str(e.args[0])) from e
        cell_radius, max_layers, total_nodes = scale.cell_radius, scale.max_layers, scale.total_nodes
    config = AutoConfig(cell_radius=cell_radius, max_layers=max_layers, total_nodes=total_nodes)
    realization = deploy_auto(config, seed=seed, workers=_require_positive("workers", workers))

    deployment = realization.deployment
    if len(deployment) != config.total_nodes:
        raise InvariantError(
            f"Deployment holds {len(deployment)} points, expected {config.total_nodes}",
            {"points": len(deployment), "expected": config.total_nodes},
        )
    clusters = [
        Cluster(sector, count, j, 0)
        for j, (sector, count) in enumerate(zip(realization.layer_sectors, realization.layer_counts))
    ]
    _check_membership(deployment, clusters)

    write_points_csv(out, deployment)
    layers: List[LayerSummaryDict] = [
        {
            "layer": c.layer,
            "inner_radius": c.sector.inner_radius,
            "outer_radius": c.sector.outer_radius,
            "area": c.sector.area,
            "nodes": c.count,
            "density": density,
        }
        for c, density in zip(clusters, layer_densities(realization))
    ]
    summary = {
        "config": config.to_dict(),
        "seed": seed,
        "n_layers": realization.n_layers,
        "layer_radii": realization.layer_radii,
        "n_in": realization.n_inner,
        "n_out": realization.n_outer,
        "layers": layers,
    }
    summary_path = write_json(_sidecar(out, "summary"), summary)
    return {"points": len(deployment), "n_layers": realization.n_layers, "summary": str(summary_path)}


def cmd_density(
    points: str,
    out: str,
    bins: int = settings.DEFAULT_BINS,
    bins_y: Optional[int] = None,
    bounds: Optional[Sequence[float]] = None,
    l1: Optional[float] = None,
    l2: Optional[float] = None,
    a1: Angle = 0.0,
    a2: Angle = "2pi",
) -> Dict[str, Any]:
    """Histogram a points file into a density grid and a DensityReport.

    With a reference sector (``l2`` and optionally ``l1``, ``a1``, ``a2``)
    the report carries the analytical mean occupancy, and bounds default to
    [-l2, l2]^2. Without one, bounds default to the union of the per-cluster
    point boxes.
    """
    deployment = read_points_csv(points)
    if len(deployment) == 0:
        raise EstimationError(f"{points}: no points to estimate a density from")
    bins = _require_positive("bins", bins)
    bins_y = _require_positive("bins_y", bins_y) if bins_y is not None else bins

    sector = None
    if l2 is not None:
        sector = RingSector(float(l1 or 0.0), float(l2), _angle("a1", a1), _angle("a2", a2))
    if bounds is not None:
        if len(bounds) != 4:
            raise ConfigurationError(f"bounds takes x_lo x_hi y_lo y_hi, got {list(bounds)}")
        surface = Bounds(*map(float, bounds))
    elif sector is not None:
        surface = Bounds.square(sector.outer_radius)
    else:
        surface = None

    estimate = asd_pdf_estimate(deployment, bins, bins_y, bounds=surface)
    analytical = None
    if sector is not None:
        if estimate.grid.bounds != Bounds.square(sector.outer_radius) or bins != bins_y:
            logger.warning("analytical mean assumes a square [-l2, l2]^2 grid; comparing anyway")
        analytical = analytical_mean_density(sector, len(deployment), bins)
    report = density_report(estimate.grid, analytical)

    write_grid(out, estimate)
    report_path = write_json(_sidecar(out, "report"), report.model_dump())
    logger.info(
        f"Density grid {bins}x{bins_y}: h_sim={report.empirical:.4f}, n_xy={report.n_xy}"
        + (f", h_analytical={report.analytical:.4f}, error={report.error_pct:.2f}%" if analytical else "")
    )
    return {"report": report.model_dump(), "report_path": str(report_path)}


def _reference_row(row, seed: int, ordinal: int, samples: Optional[int], bins: Optional[int]) -> ReferenceRowResult:
    n = samples or row.samples
    n_bins = bins or row.bins
    sector = RingSector(row.inner_radius, row.outer_radius, row.angle_lo, row.angle_hi)
    xy = sample_points(sector, n, SeededRng(seed, task_index=ordinal))
    grid = build_histogram(xy, Bounds.square(sector.outer_radius), n_bins)
    report = density_report(grid, analytical_mean_density(sector, n, n_bins))
    logger.info(
        f"{row.name}: n={n} h_analytical={report.analytical:.4f} "
        f"h_sim={report.empirical:.4f} error={report.error_pct:.2f}%"
    )
    return ReferenceRowResult(
        name=row.name,
        area=sector.area,
        samples=n,
        bins=n_bins,
        number_density=number_density(n, sector.area),
        report=report,
        published_analytical=row.analytical,
        published_simulation=row.simulation,
        published_error_pct=row.error_pct,
    )


def cmd_report(
    out: str,
    seed: int = settings.DEFAULT_SEED,
    samples: Optional[int] = None,
    bins: Optional[int] = None,
    rows: Optional[Sequence[str]] = None,
    workers: int = settings.WORKERS,
) -> Dict[str, Any]:
    """Reproduce the single-sector density-validation table.

    Row k samples from sub-stream k of ``seed``, so rows are independent of
    each other and of ``workers``. ``samples`` and ``bins`` override every
    row's published values.
    """
    scenarios = load_reference_scenarios().density_rows
    if rows:
        known = {row.name for row in scenarios}
        unknown = sorted(set(rows) - known)
        if unknown:
            raise ConfigurationError(f"unknown report rows {unknown}, choose from {sorted(known)}")
    selected = [(k, row) for k, row in enumerate(scenarios) if not rows or row.name in rows]
    if samples is not None:
        _require_positive("samples", samples)
    if bins is not None:
        _require_positive("bins", bins)

    workers = _require_positive("workers", workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda item: _reference_row(item[1], seed, item[0], samples, bins), selected))
    else:
        results = [_reference_row(row, seed, k, samples, bins) for k, row in selected]

    table = {"seed": seed, "rows": [result.model_dump() for result in results]}
    write_json(out, table)
    return {"rows": len(results), "max_error_pct": max(r.report.error_pct for r in results)}


def cmd_plot(source: str, out: str, marker_size: float = 1.0) -> Dict[str, Any]:
    """Write a matplotlib script that draws the points or grid file ``source``."""
    script = plot_script(Path(source), marker_size=marker_size)
    atomic_write_text(out, script)
    return {"script": out}


COMMANDS = {
    "sample-ring": cmd_sample_ring,
    "deploy-controlled": cmd_deploy_controlled,
    "deploy-auto": cmd_deploy_auto,
    "density": cmd_density,
    "report": cmd_report,
    "plot": cmd_plot,
}

INPUT_OPTIONS = {"plan", "points", "source"}
OUTPUT_OPTIONS = {"out"}
