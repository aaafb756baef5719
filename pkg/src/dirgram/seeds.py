"""Deterministic seed derivation.

All randomness in the package flows through numpy's PCG64 generator,
seeded with 64-bit integers derived here. Deriving a named seed from a
base seed plus string labels (corpus id, n, smoothing method, replicate
index, ...) makes every analysis cell independently reproducible and
independent of execution order, and the derived integer can be recorded
verbatim in reports.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(*parts: object) -> int:
    """Hash the textual form of *parts* into a 64-bit seed (SHA-256, first 8 bytes)."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def generator(seed: int) -> np.random.Generator:
    """A PCG64 generator for the given 64-bit seed."""
    return np.random.Generator(np.random.PCG64(seed))
