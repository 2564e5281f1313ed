"""Seed handling with reproducible, independent substreams.

Every sampler in this package is a pure function of (parameters, seed): the
same :class:`RngSeed` always yields the same sample, and child streams
obtained via :meth:`RngSeed.child` are statistically independent of each
other and of the parent.  This is what makes per-layer and per-ensemble-member
sampling order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngSeed:
    """A root seed plus a path of stream ids selecting a substream."""

    seed: int
    stream: tuple[int, ...] = ()

    def child(self, *ids: int) -> "RngSeed":
        """Derive an independent substream by extending the stream path."""
        return RngSeed(self.seed, self.stream + ids)

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=self.stream)
        )


def as_seed(seed) -> RngSeed:
    """Coerce an int or RngSeed into an RngSeed."""
    if isinstance(seed, RngSeed):
        return seed
    return RngSeed(int(seed))
