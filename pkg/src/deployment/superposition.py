"""Superposition of independently sampled clusters into one deployment.

Each cluster is a ring sector with a node budget. Clusters are sampled in
order from one stream (the reference semantics), or in parallel with one
sub-stream per cluster ordinal when ``workers > 1``.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from .exceptions import InvariantError
from .geometry import RingSector, sample_points
from .models import Deployment
from .rng import GENERATOR_NAME, SeededRng
from .types import FloatArray, SectorRange


class Cluster(NamedTuple):
    """One deployment region with its node budget and tags."""
    sector: RingSector
    count: int
    layer: int
    index: int


def superpose(
    clusters: Sequence[Cluster],
    rng: SeededRng,
    workers: int = 1,
    meta: Optional[Dict[str, Any]] = None,
) -> Deployment:
    """Sample every cluster and concatenate the results in cluster order.

    Args:
        clusters: Regions in generation order
        rng: Root stream; consumed directly when serial, only its seed is
            used when parallel
        workers: Thread count; above 1 each cluster draws from
            ``rng.substream(ordinal)``
        meta: Extra provenance merged into Deployment.meta

    Raises:
        InvariantError: If the assembled point count differs from the budget
    """
    if workers > 1 and len(clusters) > 1:
        streams = [rng.substream(ordinal) for ordinal in range(len(clusters))]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks: List[FloatArray] = list(pool.map(
                lambda job: sample_points(job[0].sector, job[0].count, job[1]),
                zip(clusters, streams),
            ))
        draws = sum(stream.draws for stream in streams)
        stream_rule = "substream-per-cluster"
    else:
        start_draws = rng.draws
        blocks = [sample_points(c.sector, c.count, rng) for c in clusters]
        draws = rng.draws - start_draws
        stream_rule = "serial"

    ranges: List[SectorRange] = []
    offset = 0
    for cluster, block in zip(clusters, blocks):
        ranges.append(SectorRange(cluster.layer, cluster.index, offset, offset + len(block)))
        offset += len(block)

    budget = sum(c.count for c in clusters)
    xy = np.vstack(blocks) if blocks else np.empty((0, 2))
    if xy.shape[0] != budget:
        raise InvariantError(
            f"Generated {xy.shape[0]} points for a budget of {budget}",
            {"generated": int(xy.shape[0]), "budget": budget},
        )

    counts = [c.count for c in clusters]
    deployment_meta: Dict[str, Any] = {
        "generator": GENERATOR_NAME,
        "stream": stream_rule,
        "draws": draws,
    }
    deployment_meta.update(meta or {})
    return Deployment(
        xy=xy,
        layer=np.repeat(np.array([c.layer for c in clusters], dtype=np.int64), counts),
        sector=np.repeat(np.array([c.index for c in clusters], dtype=np.int64), counts),
        seed=rng.seed,
        ranges=ranges,
        meta=deployment_meta,
    )
