"""Automatic inhomogeneous deployment from (L, n_L-max, n_s).

The layer count is drawn uniformly from {2, ..., n_L-max}, the interior layer
radii uniformly on (0, L), and nodes are split equally with the remainder
going to the innermost layer. Layer densities then differ because the layer
areas do.

Stream order: one draw for the layer count, n_L - 1 draws for the radii,
then two draws per node, innermost layer first.
"""
import math
from typing import List, Tuple

import numpy as np
from loguru import logger

from ..config.settings import settings
from ..utils.logger import log_execution_time
from .exceptions import ConfigurationError
from .geometry import RingSector
from .models import AutoConfig, AutoRealization
from .rng import SeededRng
from .superposition import Cluster, superpose


def _require_int(name: str, value: int, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be at least {minimum}, got {value}")
    return int(value)


def layer_count_from_uniform(u: float, max_layers: int) -> int:
    """Map one uniform in (0, 1) onto {2, ..., max_layers} with equal mass."""
    return min(2 + int(math.floor(u * (max_layers - 1))), max_layers)


def literal_layer_count(u: float, max_layers: int) -> int:
    """Bucket search over a continuous draw on (3/2, max_layers + 1/2).

    Transcribes the loop form of the layer-count draw; it has the same
    distribution as layer_count_from_uniform.
    """
    v = 1.5 + u * (max_layers - 1)
    for i in range(2, max_layers + 1):
        if abs(v - i) <= 0.5:
            return i
    return max_layers


def draw_layer_count(max_layers: int, rng: SeededRng) -> int:
    """Draw n_L ~ U_D(2, max_layers); consumes exactly one uniform.

    Raises:
        ConfigurationError: If max_layers < 2
    """
    max_layers = _require_int("max_layers", max_layers, 2)
    return layer_count_from_uniform(rng.uniform(), max_layers)


def split_nodes(total_nodes: int, n_layers: int) -> Tuple[int, int]:
    """Equal split with the remainder in the innermost layer.

    Returns:
        (n_in, n_out) with n_out = floor(n_s / n_L) and
        n_in = n_s - (n_L - 1) * n_out

    Raises:
        ConfigurationError: If there are fewer nodes than layers
    """
    total_nodes = _require_int("total_nodes", total_nodes, 1)
    n_layers = _require_int("n_layers", n_layers, 1)
    n_out = total_nodes // n_layers
    if n_out == 0:
        raise ConfigurationError(
            f"fewer nodes than layers: {total_nodes} nodes cannot fill {n_layers} layers"
        )
    return total_nodes - (n_layers - 1) * n_out, n_out


def draw_layer_radii(cell_radius: float, n_layers: int, rng: SeededRng) -> List[float]:
    """Draw n_L - 1 interior radii on (0, L), sort them and append L.

    A value colliding with another radius (or rounding onto L) is drawn again
    until all radii are distinct, so every layer has positive width.
    """
    n_layers = _require_int("n_layers", n_layers, 2)
    radii = rng.uniforms(n_layers - 1) * cell_radius
    while True:
        radii = np.sort(radii, kind="stable")
        clash = np.zeros(radii.shape, dtype=bool)
        clash[1:] = radii[1:] == radii[:-1]
        clash |= (radii <= 0.0) | (radii >= cell_radius)
        if not clash.any():
            break
        logger.debug(f"Redrawing {int(clash.sum())} colliding layer radii")
        radii[clash] = rng.uniforms(int(clash.sum())) * cell_radius
    return [float(r) for r in radii] + [float(cell_radius)]


@log_execution_time
def deploy_auto(
    config: AutoConfig,
    seed: int = settings.DEFAULT_SEED,
    workers: int = 1,
) -> AutoRealization:
    """Run one automatic deployment.

    Args:
        config: Cell radius, maximum layer count and node total
        seed: 64-bit root seed
        workers: Above 1, layers are sampled in parallel on per-layer
            sub-streams after the layout draws

    Raises:
        ConfigurationError: If the drawn layer count exceeds the node total
    """
    if config.total_nodes < config.max_layers:
        logger.warning(
            f"total_nodes={config.total_nodes} < max_layers={config.max_layers}: "
            "some layer counts cannot be filled"
        )
    rng = SeededRng(seed)
    n_layers = draw_layer_count(config.max_layers, rng)
    n_inner, n_outer = split_nodes(config.total_nodes, n_layers)
    radii = draw_layer_radii(config.cell_radius, n_layers, rng)
    logger.info(
        f"Automatic deployment: {n_layers} layers, radii={[round(r, 4) for r in radii]}, "
        f"n_in={n_inner}, n_out={n_outer}"
    )

    edges = [0.0] + radii
    clusters = [
        Cluster(RingSector(edges[j], edges[j + 1]), n_inner if j == 0 else n_outer, j, 0)
        for j in range(n_layers)
    ]
    deployment = superpose(
        clusters,
        rng,
        workers=workers,
        meta={"mode": "automatic", "config": config.to_dict()},
    )
    return AutoRealization(
        config=config,
        n_layers=n_layers,
        layer_radii=radii,
        n_inner=n_inner,
        n_outer=n_outer,
        deployment=deployment,
    )


def layer_densities(realization: AutoRealization) -> List[float]:
    """Raw number density of every realized layer, innermost first."""
    return [
        count / sector.area
        for count, sector in zip(realization.layer_counts, realization.layer_sectors)
    ]
