"""Plot-script emission.

Plots are not rendered here. A standalone matplotlib script is written next
to the data; running it draws the figure.
"""
from pathlib import Path
from string import Template

from ..core.artifacts import detect_schema

_HEADER = '''#!/usr/bin/env python
"""Generated plot script for $data."""
import json

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

DATA = "$data"
'''

_SCATTER = _HEADER + '''
frame = pd.read_csv(DATA)
fig, ax = plt.subplots(figsize=(6, 6))
if {"layer", "sector"}.issubset(frame.columns):
    tags = frame["layer"] * 1000 + frame["sector"]
    for tag in np.unique(tags):
        part = frame[tags == tag]
        ax.scatter(part["x"], part["y"], s=$marker_size, label=f"layer {tag // 1000}, sector {tag % 1000}")
    if len(np.unique(tags)) <= 12:
        ax.legend(fontsize="small", markerscale=4)
else:
    ax.scatter(frame["x"], frame["y"], s=$marker_size)
ax.set_aspect("equal")
ax.set_xlabel("x")
ax.set_ylabel("y")
ax.set_title(f"{len(frame)} nodes")
plt.show()
'''

_HEATMAP_CSV = _HEADER + '''
frame = pd.read_csv(DATA)
nx, ny = frame["i"].max() + 1, frame["j"].max() + 1
xc = np.unique(frame["x_center"])
yc = np.unique(frame["y_center"])
pdf = frame["pdf"].to_numpy().reshape(nx, ny)
'''

_HEATMAP_JSON = _HEADER + '''
with open(DATA, encoding="utf-8") as handle:
    envelope = json.load(handle)
bounds = envelope["bounds"]
nx, ny = envelope["n_bins_x"], envelope["n_bins_y"]
dx = (bounds["x_hi"] - bounds["x_lo"]) / nx
dy = (bounds["y_hi"] - bounds["y_lo"]) / ny
xc = bounds["x_lo"] + (np.arange(nx) + 0.5) * dx
yc = bounds["y_lo"] + (np.arange(ny) + 0.5) * dy
pdf = np.asarray(envelope["pdf"])
'''

_HEATMAP_BODY = '''
fig = plt.figure(figsize=(10, 4.5))
ax = fig.add_subplot(1, 2, 1)
mesh = ax.pcolormesh(xc, yc, pdf.T, shading="nearest", cmap="viridis")
fig.colorbar(mesh, ax=ax, label="estimated pdf")
ax.set_aspect("equal")
ax.set_xlabel("x")
ax.set_ylabel("y")
ax3d = fig.add_subplot(1, 2, 2, projection="3d")
X, Y = np.meshgrid(xc, yc, indexing="ij")
ax3d.plot_surface(X, Y, pdf, cmap="viridis")
ax3d.set_xlabel("x")
ax3d.set_ylabel("y")
plt.tight_layout()
plt.show()
'''


def plot_script(data_path: Path, marker_size: float = 1.0) -> str:
    """Build the script for a points or grid file.

    Raises:
        ArtifactError: If the file matches no known schema
    """
    schema = detect_schema(data_path)
    if schema == "points":
        template = _SCATTER
    elif schema == "grid":
        template = _HEATMAP_CSV + _HEATMAP_BODY
    else:
        template = _HEATMAP_JSON + _HEATMAP_BODY
    return Template(template).substitute(data=data_path.as_posix(), marker_size=marker_size)
