"""Keyed, counter-based random streams.

Every random object in the package is drawn from a Philox4x64 stream whose
128-bit key packs (master seed, colour index, purpose tag).  Streams are
therefore independent of evaluation order and of thread count, and the raw
64-bit outputs are stable across platforms and numpy versions.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

MASK64 = (1 << 64) - 1

# purpose tags
SEED_GRAPH = 0
PARTITION = 1
SAMPLING = 2


def stream(seed: int, index: int, tag: int) -> np.random.Philox:
    if not 0 <= tag < 256:
        raise ValueError(f"tag out of range: {tag}")
    if index < 0 or index >= 1 << 56:
        raise ValueError(f"stream index out of range: {index}")
    key = (seed & MASK64) | (((index << 8) | tag) << 64)
    return np.random.Philox(key=key)


def uniform_ints(bitgen: np.random.Philox, bound: int, size: int) -> np.ndarray:
    """`size` independent uniform draws from range(bound), by rejection on raw 64-bit words."""
    if bound < 1:
        raise ValueError("bound must be positive")
    if bound == 1:
        return np.zeros(size, dtype=np.int64)
    excess = (1 << 64) % bound
    out = np.empty(size, dtype=np.int64)
    filled = 0
    while filled < size:
        raw = bitgen.random_raw(size - filled)
        if excess:
            raw = raw[raw < np.uint64((1 << 64) - excess)]
        out[filled:filled + raw.size] = (raw % np.uint64(bound)).astype(np.int64)
        filled += raw.size
    return out


def bernoulli(bitgen: np.random.Philox, p: Fraction, size: int) -> np.ndarray:
    """Independent Bernoulli(p) flags: a raw word is a success iff it is below floor(p * 2**64)."""
    raw = bitgen.random_raw(size)
    if p >= 1:
        return np.ones(size, dtype=bool)
    threshold = (p.numerator << 64) // p.denominator
    return raw < np.uint64(threshold)


def sample_without_replacement(bitgen: np.random.Philox, population: int, count: int) -> np.ndarray:
    """Uniform `count`-subset of range(population), returned sorted (partial Fisher-Yates)."""
    if not 0 <= count <= population:
        raise ValueError("cannot sample more items than the population holds")
    pool = np.arange(population, dtype=np.int64)
    for j in range(count):
        swap = j + int(uniform_ints(bitgen, population - j, 1)[0])
        pool[j], pool[swap] = pool[swap], pool[j]
    return np.sort(pool[:count])
