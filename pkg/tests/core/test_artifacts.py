"""Tests for artifact files and manifests."""
import json

import numpy as np
import pytest

from src.core.artifacts import (
    atomic_write_text,
    detect_schema,
    manifest_path,
    read_config_file,
    read_grid,
    read_points_csv,
    write_grid,
    write_manifest,
    write_points_csv,
)
from src.deployment.controlled import deploy_controlled
from src.deployment.density import asd_pdf_estimate
from src.deployment.exceptions import ArtifactError
from src.deployment.types import Bounds
from src.models.reports import RunManifest


@pytest.fixture
def deployment(two_layer_plan):
    return deploy_controlled(two_layer_plan, seed=17)


@pytest.fixture
def manifest():
    return RunManifest(
        command="sample-ring",
        config={"n": 10, "out": "points.csv"},
        seed=3,
        outputs=["points.csv"],
        tool_version="0.1.0",
        generator="numpy.random.PCG64",
    )


def test_points_csv_lossless(tmp_path, deployment):
    """Test that 17 significant digits round-trip every coordinate exactly."""
    path = write_points_csv(tmp_path / "points.csv", deployment)
    loaded = read_points_csv(path)
    assert np.array_equal(loaded.xy, deployment.xy)
    assert np.array_equal(loaded.layer, deployment.layer)
    assert np.array_equal(loaded.sector, deployment.sector)
    assert path.read_text().splitlines()[0] == "x,y,layer,sector"


def test_points_csv_byte_stable(tmp_path, two_layer_plan):
    a = write_points_csv(tmp_path / "a.csv", deploy_controlled(two_layer_plan, seed=1))
    b = write_points_csv(tmp_path / "b.csv", deploy_controlled(two_layer_plan, seed=1))
    assert a.read_bytes() == b.read_bytes()


def test_untagged_points_read_as_one_cluster(tmp_path):
    path = tmp_path / "raw.csv"
    path.write_text("x,y\n0.5,0.5\n-0.25,0.1\n")
    loaded = read_points_csv(path)
    assert len(loaded) == 2
    assert loaded.layer.tolist() == [0, 0]


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ArtifactError):
        read_points_csv(path)


def test_grid_csv_and_json(tmp_path, deployment):
    estimate = asd_pdf_estimate(deployment, 8, bounds=Bounds.square(2.0))
    csv_path = write_grid(tmp_path / "grid.csv", estimate)
    json_path = write_grid(tmp_path / "grid.json", estimate)

    assert csv_path.read_text().splitlines()[0] == "i,j,x_center,y_center,count,pdf"
    grid, pdf = read_grid(csv_path)
    assert np.array_equal(grid.counts, estimate.grid.counts)
    assert grid.bounds == pytest.approx(Bounds.square(2.0))
    assert np.array_equal(pdf, estimate.pdf)

    envelope = json.loads(json_path.read_text())
    assert envelope["n_bins_x"] == 8
    assert envelope["bounds"] == {"x_lo": -2, "x_hi": 2, "y_lo": -2, "y_hi": 2}
    grid, pdf = read_grid(json_path)
    assert np.array_equal(grid.counts, estimate.grid.counts)


def test_detect_schema(tmp_path, deployment):
    points = write_points_csv(tmp_path / "points.csv", deployment)
    estimate = asd_pdf_estimate(deployment, 4)
    assert detect_schema(points) == "points"
    assert detect_schema(write_grid(tmp_path / "grid.csv", estimate)) == "grid"
    assert detect_schema(write_grid(tmp_path / "grid.json", estimate)) == "grid-json"


def test_detect_unknown_schema(tmp_path):
    path = atomic_write_text(tmp_path / "other.csv", "a,b,c\n1,2,3\n")
    with pytest.raises(ArtifactError):
        detect_schema(path)
    with pytest.raises(ArtifactError):
        detect_schema(atomic_write_text(tmp_path / "other.json", '{"hello": 1}'))


def test_atomic_write_leaves_no_temp_files(tmp_path):
    atomic_write_text(tmp_path / "out" / "file.txt", "data")
    assert [p.name for p in (tmp_path / "out").iterdir()] == ["file.txt"]


def test_manifest_written_next_to_output(tmp_path, manifest):
    output = tmp_path / "points.csv"
    path = write_manifest(output, manifest)
    assert path == manifest_path(output)
    assert path.name == "points.csv.manifest.json"
    data = json.loads(path.read_text())
    assert data["command"] == "sample-ring"
    assert data["generator"] == "numpy.random.PCG64"


def test_config_file_from_manifest(tmp_path, manifest):
    path = write_manifest(tmp_path / "points.csv", manifest)
    assert read_config_file(path) == {"n": 10, "out": "points.csv"}


def test_config_file_plain(tmp_path):
    path = atomic_write_text(tmp_path / "options.json", '{"n": 5, "seed": 9}')
    assert read_config_file(path) == {"n": 5, "seed": 9}


def test_config_file_invalid_json(tmp_path):
    path = atomic_write_text(tmp_path / "broken.json", "{not json")
    with pytest.raises(ArtifactError):
        read_config_file(path)
