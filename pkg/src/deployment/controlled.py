"""Controlled inhomogeneous deployment from a network plan.

Layers are visited outermost loop, sectors inside them, nodes innermost; the
stream is consumed strictly in that order so a (plan, seed) pair always
yields the same deployment.
"""
from typing import List, Optional

import numpy as np
from loguru import logger

from ..config.settings import settings
from ..models.network_plan import NetworkPlan
from ..utils.logger import log_execution_time
from .exceptions import InvariantError
from .models import Deployment
from .plan import plan_digest, to_sectors
from .rng import SeededRng
from .superposition import Cluster, superpose
from .types import SectorSummaryDict


@log_execution_time
def deploy_controlled(
    plan: NetworkPlan,
    seed: int = settings.DEFAULT_SEED,
    workers: int = 1,
) -> Deployment:
    """Generate exactly n_S tagged points following the plan.

    Args:
        plan: Controlled network plan
        seed: 64-bit root seed
        workers: Above 1, sectors are sampled in parallel on per-sector
            sub-streams; the serial stream stays the reference output

    Raises:
        PlanValidationError: If the plan is invalid
    """
    clusters = to_sectors(plan)
    logger.info(
        f"Deploying {plan.total_nodes} nodes over {len(clusters)} sectors "
        f"in {plan.n_layers} layers (seed={seed})"
    )
    return superpose(
        clusters,
        SeededRng(seed),
        workers=workers,
        meta={"mode": "controlled", "plan_digest": plan_digest(plan)},
    )


def sector_densities(plan: NetworkPlan) -> List[float]:
    """Number density n/A of every sector, in to_sectors order."""
    return [cluster.count / cluster.sector.area for cluster in to_sectors(plan)]


def membership_failures(
    deployment: Deployment,
    clusters: List[Cluster],
    tolerance: float = settings.MEMBERSHIP_TOLERANCE,
) -> int:
    """Count points lying outside the sector their tag names."""
    lookup = {(c.layer, c.index): c.sector for c in clusters}
    failures = 0
    for run in deployment.ranges:
        sector = lookup[(run.layer, run.sector)]
        block = deployment.xy[run.start:run.stop]
        if len(block):
            failures += int(np.count_nonzero(~sector.contains(block[:, 0], block[:, 1], tolerance)))
    return failures


def check_deployment(
    deployment: Deployment,
    plan: NetworkPlan,
    clusters: Optional[List[Cluster]] = None,
) -> None:
    """Verify count conservation and sector membership.

    Raises:
        InvariantError: If either invariant is broken
    """
    clusters = clusters if clusters is not None else to_sectors(plan)
    if len(deployment) != plan.total_nodes:
        raise InvariantError(
            f"Deployment holds {len(deployment)} points, plan requires {plan.total_nodes}",
            {"points": len(deployment), "planned": plan.total_nodes},
        )
    failures = membership_failures(deployment, clusters)
    if failures:
        raise InvariantError(
            f"{failures} points fall outside their tagged sector",
            {"failures": failures},
        )


def sector_summary(deployment: Deployment, plan: NetworkPlan) -> List[SectorSummaryDict]:
    """Per-sector planned and generated counts with areas and densities."""
    rows: List[SectorSummaryDict] = []
    for cluster in to_sectors(plan):
        mask = (deployment.layer == cluster.layer) & (deployment.sector == cluster.index)
        area = cluster.sector.area
        rows.append({
            "layer": cluster.layer,
            "sector": cluster.index,
            "inner_radius": cluster.sector.inner_radius,
            "outer_radius": cluster.sector.outer_radius,
            "angle_lo": cluster.sector.angle_lo,
            "angle_hi": cluster.sector.angle_hi,
            "area": area,
            "planned": cluster.count,
            "generated": int(np.count_nonzero(mask)),
            "density": cluster.count / area,
        })
    return rows
