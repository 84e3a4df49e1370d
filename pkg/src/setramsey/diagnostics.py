"""Clustering statistics of a subgraph F under the random partitions.

For a graph F on k vertices of K_n, vertices are ordered by non-increasing
F-degree (ties by vertex id).  Q_i(F) holds the vertices that share a part of
phi_i with some earlier vertex, X_F weighs those collisions by degree, and the
buckets A_j(F) group vertices by degree scale.  Y and Z count the
(edge, colour) pairs of F untouched by collisions and those among them that
miss the provisional colouring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import rng
from .colouring import edge_index
from .construction import ConstructionArtifacts, PartitionMap


@dataclass(frozen=True)
class SubgraphF:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    degree_order: tuple[int, ...]

    @classmethod
    def from_edges(cls, vertices, edges) -> "SubgraphF":
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        es = []
        for u, v in edges:
            if u == v or u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) does not join two vertices of F")
            es.append((min(u, v), max(u, v)))
        es = tuple(sorted(set(es)))
        deg = {v: 0 for v in vs}
        for u, v in es:
            deg[u] += 1
            deg[v] += 1
        order = tuple(sorted(vs, key=lambda v: (-deg[v], v)))
        return cls(vs, es, order)

    @property
    def k(self) -> int:
        return len(self.vertices)

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def ranks(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.degree_order)}


@dataclass(frozen=True)
class ClusterDiagnostics:
    Q_sets: tuple[frozenset[int], ...]
    X_F: int
    A_buckets: tuple[frozenset[int], ...]  # A_buckets[j - 1] is A_j(F)
    s_values: tuple[int, ...]
    bottleneck_ell: int | None
    A_prefix_size: int | None

    @property
    def num_buckets(self) -> int:
        return len(self.A_buckets)


@dataclass(frozen=True)
class BadPairStats:
    Y_size: int
    Z_value: int


def num_buckets(k: int) -> int:
    return max(1, math.ceil(math.log2(k))) if k > 1 else 1


def degree_buckets(F: SubgraphF) -> list[frozenset[int]]:
    """A_j(F) = {v : k / 2^j <= d_F(v) < k / 2^(j-1)} for j = 1..ceil(log2 k)."""
    k = F.k
    deg = F.degrees()
    out = []
    for j in range(1, num_buckets(k) + 1):
        # integer form of k/2^j <= d < k/2^(j-1)
        out.append(frozenset(v for v, d in deg.items() if k <= d << j and d << (j - 1) < k))
    return out


def collision_sets(F: SubgraphF, partitions: Sequence[PartitionMap]) -> list[frozenset[int]]:
    out = []
    for pm in partitions:
        seen = set()
        q = set()
        for v in F.degree_order:
            part = int(pm.assignments[v])
            if part in seen:
                q.add(v)
            seen.add(part)
        out.append(frozenset(q))
    return out


def compute_cluster_diagnostics(F: SubgraphF, partitions: Sequence[PartitionMap],
                                delta: Fraction, eps: Fraction) -> ClusterDiagnostics:
    r = len(partitions)
    deg = F.degrees()
    Q = collision_sets(F, partitions)
    X = sum(deg[v] for q in Q for v in q)
    A = degree_buckets(F)
    s_vals = [sum(len(a & q) for q in Q) for a in A]
    ell = prefix = None
    running = 0
    for j, (a, s_j) in enumerate(zip(A, s_vals), start=1):
        running += len(a)
        if s_j > delta * eps * r * running:
            ell, prefix = j, running
            break
    return ClusterDiagnostics(tuple(Q), X, tuple(A), tuple(s_vals), ell, prefix)


def expected_X(F: SubgraphF, m: int, r: int) -> Fraction:
    """E[X_F] when every phi_i is uniform on [m]: sum_i sum_v d(v) (1 - (1 - 1/m)^rank(v))."""
    deg = F.degrees()
    q = 1 - Fraction(1, m)
    return r * sum(deg[v] * (1 - q ** rank) for v, rank in F.ranks().items())


def compute_bad_pair_stats(F: SubgraphF, artifacts: ConstructionArtifacts) -> BadPairStats:
    Q = collision_sets(F, artifacts.partitions)
    n = artifacts.colouring.n
    prov = artifacts.provisional.bits
    y = z = 0
    for u, v in F.edges:
        row = prov[edge_index(n, u, v)]
        for i, q in enumerate(Q):
            if u not in q and v not in q:
                y += 1
                z += not row[i]
    return BadPairStats(y, z)


def claim_holds(F: SubgraphF, diag: ClusterDiagnostics, eps: Fraction, r: int) -> bool:
    """X_F >= eps r e(F) / 2 implies a bottleneck level exists (F needs at least one edge)."""
    t = len(F.edges)
    if t == 0:
        raise ValueError("the bottleneck claim needs e(F) >= 1")
    return not (diag.X_F >= eps * r * t / 2) or diag.bottleneck_ell is not None


def bucket_weight(F: SubgraphF) -> Fraction:
    """sum_j |A_j(F)| / 2^j, which never exceeds 2 e(F) / k."""
    return sum((Fraction(len(a), 2**j) for j, a in enumerate(degree_buckets(F), start=1)),
               Fraction(0))


def sample_subgraph(n: int, k: int, t: int, bitgen: np.random.Philox) -> SubgraphF:
    """Uniform k-subset of [n], then a uniform t-subset of its pairs."""
    vs = rng.sample_without_replacement(bitgen, n, k).tolist()
    pairs = [(vs[a], vs[b]) for a in range(k) for b in range(a + 1, k)]
    if t > len(pairs):
        raise ValueError(f"cannot place {t} edges on {k} vertices")
    chosen = rng.sample_without_replacement(bitgen, len(pairs), t).tolist()
    return SubgraphF.from_edges(vs, [pairs[c] for c in chosen])


def max_bad_edges_over_sampled_cliques(artifacts: ConstructionArtifacts, k: int, samples: int,
                                       rng_seed: int) -> int:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = artifacts.colouring.n
    if k > n:
        raise ValueError("k exceeds n")
    bad = artifacts.bad
    g = rng.stream(rng_seed, 0, rng.SAMPLING)
    best = 0
    for _ in range(samples):
        S = rng.sample_without_replacement(g, n, k)
        a, b = np.triu_indices(k, 1)
        u, v = S[a], S[b]
        idx = u * (2 * n - u - 1) // 2 + (v - u - 1)
        best = max(best, int(bad[idx].sum()))
    return best
