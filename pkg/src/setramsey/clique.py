"""Exact clique search on bitset graphs.

Graphs are lists of Python ints: bit v of ``adj[u]`` is set iff uv is an
edge.  The search is branch-and-bound with a greedy colouring bound
(MCQ/BBMC style), run on a relabelled copy of the graph in which vertices
appear in degeneracy order, highest core first.
"""

from __future__ import annotations

from typing import Sequence


def bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def degeneracy_order(adj: Sequence[int]) -> list[int]:
    """Repeatedly strip a minimum-degree vertex (lowest id on ties); return the strip order reversed."""
    n = len(adj)
    alive = (1 << n) - 1
    deg = [a.bit_count() for a in adj]
    removed = []
    for _ in range(n):
        best = -1
        for v in bits(alive):
            if best < 0 or deg[v] < deg[best]:
                best = v
        removed.append(best)
        alive &= ~(1 << best)
        for w in bits(adj[best] & alive):
            deg[w] -= 1
    removed.reverse()
    return removed


class _Search:
    def __init__(self, adj: Sequence[int], target: int | None):
        self.order = degeneracy_order(adj)
        pos = {v: i for i, v in enumerate(self.order)}
        self.adj = []
        for v in self.order:
            row = 0
            for w in bits(adj[v]):
                row |= 1 << pos[w]
            self.adj.append(row)
        self.target = target
        self.best: list[int] = []
        self.best_size = 0 if target is None else target - 1
        self.done = False
        self.nodes = 0

    def colour_sort(self, P: int):
        verts, cols = [], []
        U, colour = P, 0
        while U:
            colour += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U ^= low
                Q ^= low
                Q &= ~self.adj[v]
                verts.append(v)
                cols.append(colour)
        return verts, cols

    def expand(self, R: list[int], P: int):
        self.nodes += 1
        verts, cols = self.colour_sort(P)
        for idx in range(len(verts) - 1, -1, -1):
            if len(R) + cols[idx] <= self.best_size:
                return
            v = verts[idx]
            R.append(v)
            if self.target is not None and len(R) >= self.target:
                self.best = list(R)
                self.done = True
                return
            newP = P & self.adj[v]
            if newP:
                self.expand(R, newP)
                if self.done:
                    return
            elif len(R) > self.best_size:
                self.best = list(R)
                self.best_size = len(R)
            R.pop()
            P &= ~(1 << v)

    def run(self) -> list[int]:
        n = len(self.adj)
        if n:
            self.expand([], (1 << n) - 1)
        return sorted(self.order[v] for v in self.best)


def find_clique(adj: Sequence[int], k: int) -> list[int] | None:
    """Some k-clique as a sorted vertex list, or None if the clique number is below k."""
    if k <= 0:
        return []
    if k == 1:
        return [0] if adj else None
    if k == 2:
        for u, row in enumerate(adj):
            if row >> (u + 1):
                return [u, (row >> (u + 1) & -(row >> (u + 1))).bit_length() + u]
        return None
    if len(adj) < k:
        return None
    s = _Search(adj, k)
    found = s.run()
    return found if len(found) == k else None


def max_clique(adj: Sequence[int]) -> list[int]:
    s = _Search(adj, None)
    return s.run()


def clique_number(adj: Sequence[int]) -> int:
    return len(max_clique(adj))


def is_clique(adj: Sequence[int], vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if vs[a] == vs[b] or not adj[vs[a]] >> vs[b] & 1:
                return False
    return True
