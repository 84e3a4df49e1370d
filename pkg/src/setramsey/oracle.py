"""Ground truth at tiny scale.

``brute_force_mono_clique`` enumerates every k-subset and is used only to
cross-check the branch-and-bound verifier.  ``exact_ramsey`` computes
R_{r,s}(k) by depth-first search over set-colourings, edge by edge, pruning
as soon as a monochromatic K_k closes.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from . import clique
from .colouring import SetColouring
from .verifier import CliqueWitness, verify

# guard constants
BRUTE_FORCE_LIMIT = 10**9
DEFAULT_NODE_BUDGET = 20_000_000


class GuardError(RuntimeError):
    pass


class ExceedsCap(RuntimeError):
    """R_{r,s}(k) is larger than the requested cap; carries the best witness."""

    def __init__(self, message: str, best: SetColouring | None):
        super().__init__(message)
        self.best = best


def brute_force_mono_clique(colouring: SetColouring, k: int) -> CliqueWitness | None:
    n, r = colouring.n, colouring.r
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < k or r == 0:
        return None
    if math.comb(n, k) * r > BRUTE_FORCE_LIMIT:
        raise GuardError(f"C({n},{k})*{r} exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")
    full = (1 << r) - 1
    masks = colouring.masks()
    mask = [[0] * n for _ in range(n)]
    e = 0
    for u in range(n):
        for v in range(u + 1, n):
            mask[u][v] = mask[v][u] = masks[e]
            e += 1
    best: tuple[int, tuple[int, ...]] | None = None
    for S in itertools.combinations(range(n), k):
        common = full
        for a, b in itertools.combinations(S, 2):
            common &= mask[a][b]
            if not common:
                break
        if common:
            colour = (common & -common).bit_length() - 1
            if best is None or colour < best[0]:
                best = (colour, S)
                if colour == 0:
                    break
    return None if best is None else CliqueWitness(best[0], best[1])


@dataclass
class ExactResult:
    r: int
    s: int
    k: int
    value: int
    witness_colouring: SetColouring
    exhaustive_upper_proof: bool
    nodes_per_level: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0

    def proof_log(self) -> str:
        lines = [f"exact R_{{{self.r},{self.s}}}({self.k}) = {self.value}",
                 "symmetry: first edge fixed to colours {0..s-1} (colour permutations only)"]
        for n, count in sorted(self.nodes_per_level.items()):
            verdict = "no valid colouring" if n == self.value else "valid colouring found"
            lines.append(f"n={n} nodes={count} {verdict}")
        lines.append(f"elapsed_s={self.elapsed:.3f}")
        return "\n".join(lines) + "\n"


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0


def _search(n: int, r: int, s: int, k: int, budget: _Budget) -> list[int] | None:
    """First valid colouring of K_n (masks in lexicographic edge order), or None."""
    options = [sum(1 << c for c in combo) for combo in itertools.combinations(range(r), s)]
    # vertex-major edge order: (0,1), (0,2), (1,2), (0,3), ...
    order = [(u, v) for v in range(1, n) for u in range(v)]
    adj = [[0] * n for _ in range(r)]  # adj[i][x]: colour-i neighbours of x among assigned edges
    assigned = [0] * len(order)

    def closes_clique(i: int, u: int, v: int) -> bool:
        if k == 2:
            return True
        common = adj[i][u] & adj[i][v]
        if common.bit_count() < k - 2:
            return False
        # the induced graph on `common` needs a (k-2)-clique
        verts = list(clique.bits(common))
        local = []
        for x in verts:
            row = 0
            for j, y in enumerate(verts):
                if adj[i][x] >> y & 1:
                    row |= 1 << j
            local.append(row)
        return clique.find_clique(local, k - 2) is not None

    def dfs(pos: int) -> bool:
        budget.nodes += 1
        if budget.nodes > budget.limit:
            raise GuardError(f"node budget {budget.limit} exhausted at n={n}")
        if pos == len(order):
            return True
        u, v = order[pos]
        choices = options[:1] if pos == 0 else options
        for opt in choices:
            if any(closes_clique(i, u, v) for i in clique.bits(opt)):
                continue
            for i in clique.bits(opt):
                adj[i][u] |= 1 << v
                adj[i][v] |= 1 << u
            assigned[pos] = opt
            if dfs(pos + 1):
                return True
            for i in clique.bits(opt):
                adj[i][u] &= ~(1 << v)
                adj[i][v] &= ~(1 << u)
        return False

    if not dfs(0):
        return None
    by_edge = dict(zip(order, assigned))
    return [by_edge[(u, v)] for u in range(n) for v in range(u + 1, n)]


def exact_ramsey(r: int, s: int, k: int, n_cap: int, node_budget: int = DEFAULT_NODE_BUDGET
                 ) -> ExactResult:
    """Least n <= n_cap such that every set-colouring of K_n has a monochromatic K_k."""
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    if k < 2:
        raise ValueError("need k >= 2")
    start = time.perf_counter()
    # no K_k fits on fewer than k vertices
    best = SetColouring.constant(k - 1, r, range(s))
    nodes: dict[int, int] = {}
    for n in range(k, n_cap + 1):
        budget = _Budget(node_budget)
        found = _search(n, r, s, k, budget)
        nodes[n] = budget.nodes
        if found is None:
            rep = verify(best, s, k)
            assert rep.valid, "witness colouring failed verification"
            return ExactResult(r, s, k, n, best, True, nodes, time.perf_counter() - start)
        best = SetColouring.from_masks(n, r, found)
    raise ExceedsCap(f"R_{{{r},{s}}}({k}) exceeds n_cap={n_cap}", best)
