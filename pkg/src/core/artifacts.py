# src/core/artifacts.py
"""Points, grid, report and manifest files.

Every file is written to a temporary sibling and renamed into place, so a
reader never sees a partial artifact. CSV floats use 17 significant digits,
which round-trips IEEE doubles exactly and keeps outputs byte-stable.
"""
import json
import os
from pathlib import Path
import tempfile
from typing import Any, Dict, Tuple, Union

from loguru import logger
import numpy as np
import pandas as pd

from ..config.settings import settings
from ..deployment.density import HistogramGrid, PdfGrid
from ..deployment.exceptions import ArtifactError
from ..deployment.models import Deployment
from ..deployment.plan import canonical_json
from ..deployment.types import Bounds
from ..models.reports import RunManifest

PathLike = Union[str, Path]

POINTS_COLUMNS = ["x", "y", "layer", "sector"]
GRID_COLUMNS = ["i", "j", "x_center", "y_center", "count", "pdf"]


def _float_format() -> str:
    return f"%.{settings.FLOAT_DIGITS}g"


def atomic_write_bytes(path: PathLike, data: bytes) -> Path:
    """Write ``data`` to ``path`` through a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug(f"Wrote {len(data)} bytes to {path}")
    return path


def atomic_write_text(path: PathLike, text: str) -> Path:
    return atomic_write_bytes(path, text.encode("utf-8"))


def write_json(path: PathLike, value: Any) -> Path:
    """Write ``value`` as canonical JSON with a trailing newline."""
    return atomic_write_text(path, canonical_json(value) + "\n")


# Points

def points_frame(deployment: Deployment) -> pd.DataFrame:
    return pd.DataFrame({
        "x": deployment.x,
        "y": deployment.y,
        "layer": deployment.layer.astype(np.int64),
        "sector": deployment.sector.astype(np.int64),
    }, columns=POINTS_COLUMNS)


def write_points_csv(path: PathLike, deployment: Deployment) -> Path:
    """Write the ``x,y,layer,sector`` CSV of a deployment."""
    text = points_frame(deployment).to_csv(index=False, float_format=_float_format(), lineterminator="\n")
    return atomic_write_text(path, text)


def read_points_csv(path: PathLike) -> Deployment:
    """Load a points CSV back into a Deployment.

    Files without tag columns are read as a single untagged cluster.

    Raises:
        ArtifactError: If the file is not a points CSV
    """
    frame = _read_csv(path)
    if not {"x", "y"}.issubset(frame.columns):
        raise ArtifactError(f"{path}: expected a points CSV with x,y columns, got {list(frame.columns)}")
    n = len(frame)
    layer = frame["layer"].to_numpy(np.int64) if "layer" in frame else np.zeros(n, dtype=np.int64)
    sector = frame["sector"].to_numpy(np.int64) if "sector" in frame else np.zeros(n, dtype=np.int64)
    xy = frame[["x", "y"]].to_numpy(dtype=float).reshape(n, 2)
    return Deployment(xy=xy, layer=layer, sector=sector, seed=0, meta={"source": str(path)})


def _read_csv(path: PathLike) -> pd.DataFrame:
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except pd.errors.EmptyDataError as e:
        raise ArtifactError(f"{path}: file is empty") from e
    except pd.errors.ParserError as e:
        raise ArtifactError(f"{path}: not a CSV file ({e})") from e


# Density grids

def grid_frame(estimate: PdfGrid) -> pd.DataFrame:
    """One row per bin, x index major."""
    grid = estimate.grid
    i, j = np.meshgrid(np.arange(grid.n_bins_x), np.arange(grid.n_bins_y), indexing="ij")
    xc, yc = np.meshgrid(grid.x_centers, grid.y_centers, indexing="ij")
    return pd.DataFrame({
        "i": i.ravel(),
        "j": j.ravel(),
        "x_center": xc.ravel(),
        "y_center": yc.ravel(),
        "count": grid.counts.ravel(),
        "pdf": estimate.pdf.ravel(),
    }, columns=GRID_COLUMNS)


def grid_envelope(estimate: PdfGrid) -> Dict[str, Any]:
    grid = estimate.grid
    return {
        "schema": "density-grid",
        "bounds": grid.bounds._asdict(),
        "n_bins_x": grid.n_bins_x,
        "n_bins_y": grid.n_bins_y,
        "n_points": estimate.n_points,
        "out_of_bounds": grid.out_of_bounds,
        "counts": grid.counts.tolist(),
        "pdf": estimate.pdf.tolist(),
    }


def write_grid(path: PathLike, estimate: PdfGrid) -> Path:
    """Write a density grid as CSV, or as a JSON envelope for ``.json`` paths."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return write_json(path, grid_envelope(estimate))
    text = grid_frame(estimate).to_csv(index=False, float_format=_float_format(), lineterminator="\n")
    return atomic_write_text(path, text)


def read_grid(path: PathLike) -> Tuple[HistogramGrid, np.ndarray]:
    """Load a grid file as (counts grid, pdf values).

    Raises:
        ArtifactError: If the file is not a density grid
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = _read_json(path)
        if data.get("schema") != "density-grid":
            raise ArtifactError(f"{path}: not a density-grid envelope")
        counts = np.asarray(data["counts"], dtype=np.int64)
        grid = HistogramGrid(
            Bounds(**data["bounds"]), data["n_bins_x"], data["n_bins_y"], counts, data["out_of_bounds"]
        )
        return grid, np.asarray(data["pdf"], dtype=float)

    frame = _read_csv(path)
    if list(frame.columns) != GRID_COLUMNS:
        raise ArtifactError(f"{path}: expected grid columns {GRID_COLUMNS}")
    nx, ny = int(frame["i"].max()) + 1, int(frame["j"].max()) + 1
    xc = np.unique(frame["x_center"].to_numpy())
    yc = np.unique(frame["y_center"].to_numpy())
    dx = (xc[-1] - xc[0]) / (nx - 1) if nx > 1 else 1.0
    dy = (yc[-1] - yc[0]) / (ny - 1) if ny > 1 else 1.0
    bounds = Bounds(xc[0] - dx / 2, xc[-1] + dx / 2, yc[0] - dy / 2, yc[-1] + dy / 2)
    counts = frame["count"].to_numpy(np.int64).reshape(nx, ny)
    return HistogramGrid(bounds, nx, ny, counts), frame["pdf"].to_numpy(float).reshape(nx, ny)


# Schema detection

def _read_json(path: Path) -> Dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ArtifactError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}") from e
    if not isinstance(data, dict):
        raise ArtifactError(f"{path}: expected a JSON object")
    return data


def detect_schema(path: PathLike) -> str:
    """Classify an input file as ``points``, ``grid`` or ``grid-json``.

    Raises:
        ArtifactError: If the file matches no known schema
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        if _read_json(path).get("schema") == "density-grid":
            return "grid-json"
        raise ArtifactError(f"{path}: unknown JSON schema")
    with path.open("r", encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
    if header == GRID_COLUMNS:
        return "grid"
    if header[:2] == ["x", "y"]:
        return "points"
    raise ArtifactError(f"{path}: unknown file schema with header {header}")


# Manifests

def manifest_path(output: PathLike) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def write_manifest(output: PathLike, manifest: RunManifest) -> Path:
    """Write ``<output>.manifest.json`` next to ``output``."""
    text = json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    return atomic_write_text(manifest_path(output), text)


def read_config_file(path: PathLike) -> Dict[str, Any]:
    """Load CLI options from a JSON config or a run manifest.

    Raises:
        ArtifactError: If the file is not a JSON object
    """
    data = _read_json(Path(path))
    if {"command", "config", "tool_version"}.issubset(data):
        return dict(RunManifest.model_validate(data).config)
    return data
