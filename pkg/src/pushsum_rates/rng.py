"""Seeded random streams.

Every run is keyed by a ``(seed, stream)`` pair and driven by the
counter-based Philox bit generator, so independent repetitions can run in
any order (or in parallel) and still reproduce bit for bit.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int | None = 0, stream: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def as_generator(seed) -> np.random.Generator:
    """Pass Generators through; turn ints (or None) into a stream-0 Philox generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(seed, 0)
