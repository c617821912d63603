"""Seedable uniform stream used by every sampler.

The generator is numpy's PCG64 seeded through ``SeedSequence(seed)``. It is
frozen: changing it changes every golden value in the test-suite.
"""
from typing import Optional

import numpy as np

from .exceptions import ConfigurationError
from .types import FloatArray

GENERATOR_NAME = "numpy.random.PCG64"

SEED_MAX = 2**64 - 1

# Draws that land on a boundary of (0, 1) are moved to these interior values.
_LOWEST = np.nextafter(0.0, 1.0)
_HIGHEST = np.nextafter(1.0, 0.0)


def validate_seed(seed: int) -> int:
    """Check that ``seed`` is a 64-bit unsigned integer.

    Raises:
        ConfigurationError: If the seed is out of range or not an integer
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ConfigurationError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) <= SEED_MAX:
        raise ConfigurationError(f"seed must lie in [0, 2**64 - 1], got {seed}")
    return int(seed)


class SeededRng:
    """Uniform draws on the open interval (0, 1) with a draw counter.

    A single instance must not be shared by concurrent callers. Parallel
    work gets its own stream from :meth:`substream`, which depends only on
    (seed, task index) so results do not depend on scheduling.

    Attributes:
        seed: Root seed of the stream
        task_index: Sub-stream index, None for the root stream
        draws: Number of uniforms consumed so far
    """

    def __init__(self, seed: int, task_index: Optional[int] = None) -> None:
        self.seed = validate_seed(seed)
        self.task_index = task_index
        spawn_key = () if task_index is None else (int(task_index),)
        sequence = np.random.SeedSequence(self.seed, spawn_key=spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(sequence))
        self.draws = 0

    def uniform(self) -> float:
        """Draw one uniform from (0, 1)."""
        return float(self.uniforms(1)[0])

    def uniforms(self, n: int) -> FloatArray:
        """Draw ``n`` uniforms from (0, 1) in stream order."""
        if n < 0:
            raise ValueError("cannot draw a negative number of uniforms")
        values = self._generator.random(n)
        np.clip(values, _LOWEST, _HIGHEST, out=values)
        self.draws += n
        return values

    def substream(self, task_index: int) -> "SeededRng":
        """Independent stream derived from (seed, task_index)."""
        if task_index < 0:
            raise ValueError("task_index must be non-negative")
        return SeededRng(self.seed, task_index=task_index)

    def __repr__(self) -> str:
        return (
            f"SeededRng(seed={self.seed}, task_index={self.task_index}, "
            f"draws={self.draws})"
        )
