"""Exact validity checks for set-colourings as Ramsey lower-bound witnesses."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import clique
from .colouring import SetColouring, edge_pairs, rows_as_bitsets


@dataclass(frozen=True)
class ColourClassGraph:
    n: int
    colour_index: int
    adjacency: tuple[int, ...]

    @classmethod
    def of(cls, colouring: SetColouring, i: int) -> "ColourClassGraph":
        return cls(colouring.n, i, tuple(rows_as_bitsets(colouring.colour_matrix(i))))

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2


@dataclass(frozen=True)
class CliqueWitness:
    colour_index: int
    vertices: tuple[int, ...]

    def check(self, colouring: SetColouring) -> bool:
        """Re-check the witness against the raw edge colour bits."""
        vs = self.vertices
        if list(vs) != sorted(set(vs)) or (vs and (vs[0] < 0 or vs[-1] >= colouring.n)):
            return False
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if not colouring.mask(vs[a], vs[b]) >> self.colour_index & 1:
                    return False
        return True


@dataclass
class VerificationReport:
    s: int
    k: int
    n: int
    r: int
    min_colour_ok: bool
    violating_edges: list[tuple[int, int, int]]
    clique_free: bool
    witness: CliqueWitness | None
    per_colour_clique_numbers: list[int] | None = None
    elapsed: float = 0.0

    @property
    def valid(self) -> bool:
        return self.min_colour_ok and self.clique_free

    def as_dict(self) -> dict:
        d = {
            "valid": self.valid,
            "n": self.n, "r": self.r, "s": self.s, "k": self.k,
            "min_colour_ok": self.min_colour_ok,
            "violating_edge_count": len(self.violating_edges),
            "violating_edges": [list(e) for e in self.violating_edges[:50]],
            "clique_free": self.clique_free,
            "witness": None if self.witness is None else {
                "colour": self.witness.colour_index, "vertices": list(self.witness.vertices)},
            "elapsed_s": round(self.elapsed, 6),
        }
        if self.per_colour_clique_numbers is not None:
            d["clique_numbers"] = self.per_colour_clique_numbers
        return d


class TuranPreconditionError(ValueError):
    pass


def check_min_colours(colouring: SetColouring, s: int) -> list[tuple[int, int, int]]:
    """Edges with fewer than s colours, as (u, v, popcount) in lexicographic order."""
    counts = colouring.popcounts()
    short = np.flatnonzero(counts < s)
    iu, iv = edge_pairs(colouring.n)
    return [(int(iu[e]), int(iv[e]), int(counts[e])) for e in short]


def _search_colour(colouring: SetColouring, i: int, k: int, edges: int) -> list[int] | None:
    if k > 2 and edges < k * (k - 1) // 2:
        return None
    return clique.find_clique(rows_as_bitsets(colouring.colour_matrix(i)), k)


def find_monochromatic_clique(colouring: SetColouring, k: int, threads: int = 1
                              ) -> CliqueWitness | None:
    """Witness in the lowest colour containing a K_k, or None.

    Colours are searched in increasing order; with threads > 1 they are
    searched concurrently but the lowest successful colour is still reported.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if colouring.n < k or colouring.r == 0:
        return None
    counts = colouring.colour_edge_counts().tolist()
    if threads <= 1:
        for i in range(colouring.r):
            found = _search_colour(colouring, i, k, counts[i])
            if found is not None:
                return CliqueWitness(i, tuple(found))
        return None
    with ThreadPoolExecutor(threads) as pool:
        results = list(pool.map(lambda i: _search_colour(colouring, i, k, counts[i]), range(colouring.r)))
    for i, found in enumerate(results):
        if found is not None:
            return CliqueWitness(i, tuple(found))
    return None


def clique_numbers(colouring: SetColouring) -> list[int]:
    return [clique.clique_number(rows_as_bitsets(colouring.colour_matrix(i)))
            for i in range(colouring.r)]


def densest_colour(colouring: SetColouring) -> int:
    """Colour with the most edges; lowest index on ties."""
    return int(np.argmax(colouring.colour_edge_counts()))


def turan_threshold_exceeded(edges: int, n: int, k: int) -> bool:
    """edges > (1 - 1/(k-1)) n^2 / 2, in exact integer arithmetic."""
    return 2 * (k - 1) * edges > (k - 2) * n * n


def turan_extract_clique(graph: ColourClassGraph, k: int) -> CliqueWitness:
    if k < 2:
        raise ValueError("k must be >= 2")
    e = graph.edge_count()
    if not turan_threshold_exceeded(e, graph.n, k):
        raise TuranPreconditionError(
            f"{e} edges on {graph.n} vertices does not exceed the Turan threshold for K_{k}")
    found = clique.find_clique(list(graph.adjacency), k)
    if found is None:  # impossible by Turan's theorem
        raise AssertionError("Turan threshold exceeded but no clique found")
    return CliqueWitness(graph.colour_index, tuple(found))


def count_bad_edges_in_set(S: Iterable[int], bad_edges: Iterable[tuple[int, int]]) -> int:
    """Number of pairs inside S that belong to ``bad_edges`` (pairs in either orientation)."""
    vs = sorted(set(S))
    bad = {(min(e), max(e)) for e in bad_edges}
    return sum((vs[a], vs[b]) in bad for a in range(len(vs)) for b in range(a + 1, len(vs)))


def verify(colouring: SetColouring, s: int, k: int, *, exhaustive: bool = False,
           threads: int = 1) -> VerificationReport:
    """Decide exactly whether every edge has >= s colours and no colour class holds a K_k.

    With ``exhaustive`` the clique number of every colour class is also
    computed (slower; the witness is unaffected).
    """
    start = time.perf_counter()
    violating = check_min_colours(colouring, s)
    witness = find_monochromatic_clique(colouring, k, threads=threads)
    numbers = clique_numbers(colouring) if exhaustive else None
    return VerificationReport(
        s=s, k=k, n=colouring.n, r=colouring.r,
        min_colour_ok=not violating,
        violating_edges=violating,
        clique_free=witness is None,
        witness=witness,
        per_colour_clique_numbers=numbers,
        elapsed=time.perf_counter() - start,
    )
