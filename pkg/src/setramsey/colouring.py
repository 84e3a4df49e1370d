"""Edge set-colourings of K_n.

Edges are indexed in lexicographic (u, v) order with u < v, which is the
order of ``numpy.triu_indices(n, 1)``.  Colour sets are stored as a boolean
matrix ``bits`` of shape (n(n-1)/2, r); ``bits[e, i]`` is True iff colour i
is on edge e.  Integer masks (bit i = colour i) are available on demand.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=64)
def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, iv = np.triu_indices(n, 1)
    iu.setflags(write=False)
    iv.setflags(write=False)
    return iu, iv


def edge_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint arrays (u, v) for all edges in lexicographic order."""
    return _pairs(n)


def edge_index(n: int, u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    if not 0 <= u < v < n:
        raise ValueError(f"not an edge of K_{n}: ({u}, {v})")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(colours: Iterable[int]) -> int:
    m = 0
    for c in colours:
        m |= 1 << c
    return m


class SetColouring:
    __slots__ = ("n", "r", "bits")

    def __init__(self, n: int, r: int, bits: np.ndarray):
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (num_edges(n), r):
            raise ValueError(f"bits has shape {bits.shape}, expected {(num_edges(n), r)}")
        bits.setflags(write=False)
        self.n = n
        self.r = r
        self.bits = bits

    @classmethod
    def from_masks(cls, n: int, r: int, masks: Sequence[int]) -> "SetColouring":
        if len(masks) != num_edges(n):
            raise ValueError(f"expected {num_edges(n)} masks, got {len(masks)}")
        nbytes = max(1, (r + 7) // 8)
        buf = bytearray()
        for x in masks:
            if x < 0 or x >> r:
                raise ValueError(f"mask {x:x} uses colours outside range({r})")
            buf += x.to_bytes(nbytes, "little")
        raw = np.frombuffer(bytes(buf), dtype=np.uint8).reshape(len(masks), nbytes)
        bits = np.unpackbits(raw, axis=1, bitorder="little")[:, :r].astype(bool)
        return cls(n, r, bits)

    @classmethod
    def constant(cls, n: int, r: int, colours: Iterable[int]) -> "SetColouring":
        row = np.zeros(r, dtype=bool)
        row[list(colours)] = True
        return cls(n, r, np.tile(row, (num_edges(n), 1)))

    def masks(self) -> list[int]:
        if self.bits.shape[0] == 0:
            return []
        packed = np.packbits(self.bits, axis=1, bitorder="little")
        return [int.from_bytes(row.tobytes(), "little") for row in packed]

    def mask(self, u: int, v: int) -> int:
        row = self.bits[edge_index(self.n, u, v)]
        return mask_of(np.flatnonzero(row).tolist())

    def popcounts(self) -> np.ndarray:
        return self.bits.sum(axis=1)

    def colour_matrix(self, i: int) -> np.ndarray:
        """Dense symmetric adjacency matrix of colour class i."""
        adj = np.zeros((self.n, self.n), dtype=bool)
        iu, iv = edge_pairs(self.n)
        col = self.bits[:, i]
        adj[iu[col], iv[col]] = True
        adj |= adj.T
        return adj

    def colour_edge_counts(self) -> np.ndarray:
        return self.bits.sum(axis=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetColouring):
            return NotImplemented
        return self.n == other.n and self.r == other.r and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.n, self.r, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"SetColouring(n={self.n}, r={self.r})"


def rows_as_bitsets(adj: np.ndarray) -> list[int]:
    """Convert a dense boolean adjacency matrix to one Python-int bitset per row."""
    n = adj.shape[0]
    if n == 0:
        return []
    packed = np.packbits(adj, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]
