"""Seeded Haar-random unitaries and Bloch vectors.

Every draw is tied to a :class:`SeedSpec`. Sample ``i`` of an experiment uses
``stream_index=i``, so results do not depend on evaluation order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SeedSpec", "rng_for", "haar_unitary", "random_bloch"]


@dataclass(frozen=True)
class SeedSpec:
    """Address of an independent random stream.

    ``purpose`` separates streams that share a sample index but feed
    different draws (e.g. the unitary and the teleported input of one trial).
    """

    master_seed: int
    stream_index: int = 0
    purpose: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.stream_index < 0 or self.purpose < 0:
            raise ValueError("stream_index and purpose must be nonnegative")


def rng_for(seed: SeedSpec) -> np.random.Generator:
    ss = np.random.SeedSequence(seed.master_seed, spawn_key=(seed.stream_index, seed.purpose))
    return np.random.Generator(np.random.PCG64(ss))


def haar_unitary(dim: int, seed: SeedSpec | np.random.Generator) -> np.ndarray:
    """Draw a ``dim x dim`` unitary from the circular unitary ensemble.

    Ginibre matrix, QR, then each column of ``Q`` is rescaled by the phase of
    the matching diagonal entry of ``R`` so the distribution is exactly Haar.
    """
    if dim not in (2, 4, 8):
        raise ValueError(f"dim must be 2, 4 or 8, got {dim}")
    rng = seed if isinstance(seed, np.random.Generator) else rng_for(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_bloch(seed: SeedSpec | np.random.Generator) -> np.ndarray:
    """Uniform point on the unit sphere."""
    rng = seed if isinstance(seed, np.random.Generator) else rng_for(seed)
    while True:
        v = rng.standard_normal(3)
        n = np.linalg.norm(v)
        if n > 1e-8:
            return v / n
