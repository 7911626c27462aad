"""Deterministic counter-based randomness.

Every random quantity in this package is derived from a 64-bit seed through
SplitMix64, used in counter mode: the i-th output word of a stream with seed
``s`` is ``mix(s + (i+1)*GOLDEN)`` where ``mix`` is the SplitMix64 finalizer.
This is a pure function of (seed, counter), so streams are reproducible
across platforms and can be evaluated out of order or in parallel.

Conventions used throughout the package:

* one 64-bit word per decision; a fair bit is the word's least significant
  bit; a choice among ``t`` options is ``word % t``,
* bits for vertex pairs are consumed in lexicographic pair order,
* sub-streams (per trial, per retry) use ``word(seed, index)`` as their seed.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1


def word(seed: int, counter: int) -> int:
    """The ``counter``-th 64-bit output word of the stream seeded by ``seed``."""
    z = (seed + (counter + 1) * GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return (z ^ (z >> 31)) & MASK64


def words(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Vectorized ``word``: output words ``start .. start+count-1`` as uint64."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = (np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def bit(seed: int, counter: int) -> int:
    """Fair bit: least significant bit of ``word(seed, counter)``."""
    return word(seed, counter) & 1


def bits(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Vectorized fair bits as a uint8 array of 0/1."""
    return (words(seed, count, start) & np.uint64(1)).astype(np.uint8)


def subseed(seed: int, index: int) -> int:
    """Seed of the ``index``-th derived sub-stream (per trial, per retry)."""
    return word(seed, index)


def shuffle(items: list, seed: int) -> list:
    """Deterministic Fisher-Yates shuffle driven by the seeded word stream."""
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = word(seed, i) % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out
