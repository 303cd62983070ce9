"""Seed handling.

Every random stream derives from one 64-bit seed.  Sub-streams are keyed by
a tuple of integers (a "path") and use the counter-based Philox generator,
so ``stream(seed, 3, 7)`` is the same sequence regardless of how many other
streams were drawn before it.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 20140101

_MASK64 = (1 << 64) - 1


def stream(seed: int, *path: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))
