"""Random blow-up colourings of K_n.

Two constructions are provided.  The main one lets colour class i be the
blow-up of a random seed graph H_i ~ G(m, p) along a random partition
phi_i : [n] -> [m], and then repairs the edges that received fewer than s
colours by handing them every colour in which they are crossing.  The simple
one lets colour class i be the complete (k-1)-partite graph with parts given
by phi_i : [n] -> [k-1], which cannot contain K_k.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import rng
from .certificate import Certificate
from .colouring import SetColouring, edge_pairs
from .params import ConstructionParams, ParameterError
from .verifier import verify


@dataclass(frozen=True, eq=False)
class PartitionMap:
    colour_index: int
    m: int
    assignments: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignments, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.m):
            raise ValueError("partition assignment out of range")
        a.setflags(write=False)
        object.__setattr__(self, "assignments", a)

    @property
    def n(self) -> int:
        return int(self.assignments.size)


@dataclass(frozen=True, eq=False)
class SeedGraph:
    colour_index: int
    adjacency: np.ndarray  # dense (m, m) bool, symmetric, zero diagonal

    @property
    def m(self) -> int:
        return int(self.adjacency.shape[0])


@dataclass(frozen=True, eq=False)
class ConstructionArtifacts:
    colouring: SetColouring
    provisional: SetColouring
    bad: np.ndarray  # bool per edge
    crossing: SetColouring
    partitions: tuple[PartitionMap, ...]
    seeds: tuple[SeedGraph, ...]
    rng_seed: int | None
    construction: str = "main"
    params: ConstructionParams | None = field(default=None, repr=False)

    @property
    def bad_edges(self) -> list[tuple[int, int]]:
        iu, iv = edge_pairs(self.colouring.n)
        idx = np.flatnonzero(self.bad)
        return list(zip(iu[idx].tolist(), iv[idx].tolist()))


def draw_partition(seed: int, colour: int, n: int, m: int) -> PartitionMap:
    g = rng.stream(seed, colour, rng.PARTITION)
    return PartitionMap(colour, m, rng.uniform_ints(g, m, n))


def draw_partitions(seed: int, r: int, n: int, m: int) -> tuple[PartitionMap, ...]:
    return tuple(draw_partition(seed, i, n, m) for i in range(r))


def draw_seed_graph(seed: int, colour: int, m: int, p: Fraction) -> SeedGraph:
    g = rng.stream(seed, colour, rng.SEED_GRAPH)
    iu, iv = np.triu_indices(m, 1)
    present = rng.bernoulli(g, p, iu.size)
    adj = np.zeros((m, m), dtype=bool)
    adj[iu[present], iv[present]] = True
    adj |= adj.T
    adj.setflags(write=False)
    return SeedGraph(colour, adj)


def crossing_bits(partitions: Sequence[PartitionMap], n: int) -> np.ndarray:
    iu, iv = edge_pairs(n)
    phi = np.stack([pm.assignments for pm in partitions], axis=1)  # (n, r)
    return phi[iu] != phi[iv]


def assemble_main(s: int, partitions: Sequence[PartitionMap], seeds: Sequence[SeedGraph],
                  rng_seed: int | None = None, params: ConstructionParams | None = None
                  ) -> ConstructionArtifacts:
    """Build chi', B, kappa and chi from given partitions and seed graphs."""
    r = len(partitions)
    if len(seeds) != r:
        raise ValueError("need one seed graph per colour")
    n = partitions[0].n
    iu, iv = edge_pairs(n)
    cross = crossing_bits(partitions, n)
    prov = np.empty_like(cross)
    for i, (pm, h) in enumerate(zip(partitions, seeds)):
        a = pm.assignments
        prov[:, i] = h.adjacency[a[iu], a[iv]]
    bad = prov.sum(axis=1) < s
    final = np.where(bad[:, None], cross, prov)
    bad.setflags(write=False)
    return ConstructionArtifacts(
        colouring=SetColouring(n, r, final),
        provisional=SetColouring(n, r, prov),
        bad=bad,
        crossing=SetColouring(n, r, cross),
        partitions=tuple(partitions),
        seeds=tuple(seeds),
        rng_seed=rng_seed,
        construction="main",
        params=params,
    )


def _check_main(params: ConstructionParams):
    if params.m < 1 or params.n < 2:
        raise ParameterError("main construction needs m >= 1 and n >= 2")
    if not 0 <= params.p <= 1:
        raise ParameterError("p must lie in [0, 1]")
    if not 1 <= params.s < params.r:
        raise ParameterError("main construction needs 1 <= s < r")


def build_main_colouring(params: ConstructionParams, rng_seed: int, threads: int = 1
                         ) -> ConstructionArtifacts:
    _check_main(params)

    def one(i):
        return (draw_partition(rng_seed, i, params.n, params.m),
                draw_seed_graph(rng_seed, i, params.m, params.p))

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            drawn = list(pool.map(one, range(params.r)))
    else:
        drawn = [one(i) for i in range(params.r)]
    parts = [d[0] for d in drawn]
    seeds = [d[1] for d in drawn]
    return assemble_main(params.s, parts, seeds, rng_seed, params)


def assemble_simple(s: int, partitions: Sequence[PartitionMap], rng_seed: int | None = None,
                    params: ConstructionParams | None = None) -> ConstructionArtifacts:
    r = len(partitions)
    n = partitions[0].n
    cross = crossing_bits(partitions, n)
    col = SetColouring(n, r, cross)
    bad = cross.sum(axis=1) < s
    bad.setflags(write=False)
    return ConstructionArtifacts(
        colouring=col, provisional=col, bad=bad, crossing=col,
        partitions=tuple(partitions), seeds=(), rng_seed=rng_seed,
        construction="simple", params=params,
    )


def build_simple_colouring(r: int, s: int, k: int, n: int, rng_seed: int) -> ConstructionArtifacts:
    if k < 2 or n < 2 or not 1 <= s <= r:
        raise ParameterError(f"simple construction needs k >= 2, n >= 2, 1 <= s <= r; "
                             f"got r={r} s={s} k={k} n={n}")
    parts = draw_partitions(rng_seed, r, n, k - 1)
    return assemble_simple(s, parts, rng_seed)


class TruncationError(ValueError):
    def __init__(self, edges):
        self.edges = edges
        shown = ", ".join(f"({u},{v}):{c}" for u, v, c in edges[:10])
        more = f" and {len(edges) - 10} more" if len(edges) > 10 else ""
        super().__init__(f"edges with too few colours: {shown}{more}")


def truncate_to_s(colouring: SetColouring, s: int) -> SetColouring:
    """Keep the s lowest-indexed colours on every edge."""
    counts = colouring.popcounts()
    short = np.flatnonzero(counts < s)
    if short.size:
        iu, iv = edge_pairs(colouring.n)
        raise TruncationError([(int(iu[e]), int(iv[e]), int(counts[e])) for e in short])
    rank = np.cumsum(colouring.bits, axis=1)
    return SetColouring(colouring.n, colouring.r, colouring.bits & (rank <= s))


@dataclass
class ResampleOutcome:
    certificate: Certificate | None
    attempts: int
    min_colour_failures: int = 0
    clique_failures: int = 0
    seeds_tried: list[int] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.certificate is not None

    def as_dict(self) -> dict:
        return {
            "success": self.success,
            "attempts": self.attempts,
            "min_colour_failures": self.min_colour_failures,
            "clique_failures": self.clique_failures,
            "seed": None if self.certificate is None else self.certificate.seed,
        }


def build(params: ConstructionParams, construction: str, seed: int, threads: int = 1
          ) -> ConstructionArtifacts:
    if construction == "main":
        return build_main_colouring(params, seed, threads=threads)
    if construction == "simple":
        return build_simple_colouring(params.r, params.s, params.k, params.n, seed)
    raise ValueError(f"unknown construction {construction!r}")


def resample_until_valid(params: ConstructionParams, construction: str, max_attempts: int,
                         base_seed: int, threads: int = 1) -> ResampleOutcome:
    """Try seeds base_seed, base_seed + 1, ... until a colouring verifies.

    A failed attempt counts as a min-colour failure if some edge has fewer
    than s colours, and as a clique failure otherwise.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    out = ResampleOutcome(None, 0)
    for j in range(max_attempts):
        seed = (base_seed + j) & rng.MASK64
        art = build(params, construction, seed, threads)
        out.attempts += 1
        out.seeds_tried.append(seed)
        rep = verify(art.colouring, params.s, params.k, threads=threads)
        if rep.valid:
            mp = (params.m, params.p) if construction == "main" else (None, None)
            out.certificate = Certificate(
                r=params.r, s=params.s, k=params.k, colouring=art.colouring,
                construction=construction, seed=seed, m=mp[0], p=mp[1], report=rep)
            return out
        if not rep.min_colour_ok:
            out.min_colour_failures += 1
        else:
            out.clique_failures += 1
    return out
