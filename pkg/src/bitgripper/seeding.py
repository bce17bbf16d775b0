"""Deterministic RNG stream derivation.

Every stochastic component takes an explicit ``numpy.random.Generator``.
Independent streams for (class, trial) style fan-out are derived from one
root seed via ``SeedSequence`` spawn keys, so results are identical whether
trials run sequentially or in parallel.
"""

from __future__ import annotations

import numpy as np


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the stream identified by ``key`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))
