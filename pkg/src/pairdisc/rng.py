"""Deterministic seed derivation and named substreams.

Every stochastic operation takes a 64-bit unsigned seed and derives
independent substreams from it with `derive`, so results are reproducible
bit-for-bit and independent of evaluation order or thread count.

Substream layout used across the package:

- synthesis:      (seed, 0) / (seed, 1) / (seed, 2) for the three noise
                  sources of the structure generator (shared across kinds).
- permutations:   (seed, j) for replicate j = 1..P inside a permutation test.
- replicates:     (seed, i) for replicate i inside a simulation sweep.
- benchmark:      (seed, 0, i) per-pair discovery; (seed, 1, code) per-stratum
                  bootstrap, where code is the stratum index (4 = pooled).
- directions:     (seed, lo, hi) with (lo, hi) a 64-bit content hash of the
                  (cause, effect) arrays, so a direction's stream does not
                  depend on argument order of the caller.
"""

from __future__ import annotations

import hashlib

import numpy as np

RngSeed = int
"""64-bit unsigned seed. An alias, not a wrapper: seeds are plain integers."""

_MASK32 = 0xFFFFFFFF


def derive(seed: RngSeed, *path: int) -> RngSeed:
    """Derive a new 64-bit seed from `seed` and an integer path.

    Collision-resistant hashing via numpy's SeedSequence; composable
    (derive(derive(s, a), b) is a valid independent stream).
    """
    key = tuple(int(p) & _MASK32 for p in path)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])


def generator(seed: RngSeed) -> np.random.Generator:
    """A fresh PCG64 generator for the given seed."""
    return np.random.default_rng(int(seed))


def content_hash(*arrays: np.ndarray) -> tuple[int, int]:
    """Order-sensitive 64-bit hash of float arrays as two 32-bit words.

    Used to key direction substreams by data content rather than by the
    caller's argument order.
    """
    h = hashlib.blake2b(digest_size=8)
    for a in arrays:
        h.update(np.ascontiguousarray(a, dtype=np.float64).tobytes())
        h.update(b"\x1f")
    digest = h.digest()
    return (
        int.from_bytes(digest[:4], "little"),
        int.from_bytes(digest[4:], "little"),
    )
