from __future__ import annotations

import hashlib
import random

import numpy as np

SEED_MASK = (1 << 64) - 1


def derive_seed(seed: int, name: str) -> int:
    """64-bit seed of the sub-stream `name` under a master seed."""
    digest = hashlib.sha256(f"{seed & SEED_MASK}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def substream(seed: int, name: str) -> random.Random:
    """Big-integer randomness (keys, encryption nonces, topologies)."""
    return random.Random(derive_seed(seed, name))


def array_stream(seed: int, name: str) -> np.random.Generator:
    """Array randomness (grids, noise, carriers)."""
    return np.random.default_rng(derive_seed(seed, name))
