import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from setramsey import rng
from setramsey.construction import PartitionMap, build_main_colouring
from setramsey.diagnostics import (SubgraphF, bucket_weight, claim_holds, collision_sets,
                                   compute_bad_pair_stats, compute_cluster_diagnostics,
                                   degree_buckets, expected_X, max_bad_edges_over_sampled_cliques,
                                   sample_subgraph)
from setramsey.params import desk_params

DELTA = Fraction(1, 32)


def partitions_from(assign_rows, m):
    return [PartitionMap(i, m, np.array(row)) for i, row in enumerate(assign_rows)]


def test_degree_order_ties_by_id():
    F = SubgraphF.from_edges([5, 2, 9, 7], [(2, 9), (9, 5), (7, 9), (2, 5)])
    assert F.degree_order == (9, 2, 5, 7)
    assert F.degrees() == {2: 2, 5: 2, 7: 1, 9: 3}


def test_rejects_foreign_edges():
    with pytest.raises(ValueError):
        SubgraphF.from_edges([0, 1], [(0, 2)])


def test_single_part_triangle():
    r = 5
    F = SubgraphF.from_edges([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    parts = partitions_from([[0, 0, 0]] * r, 1)
    d = compute_cluster_diagnostics(F, parts, DELTA, Fraction(1, 2))
    assert all(q == {1, 2} for q in d.Q_sets)
    assert d.X_F == 4 * r


def test_injective_has_no_collisions():
    F = SubgraphF.from_edges(range(4), [(0, 1), (1, 2), (2, 3)])
    parts = partitions_from([[0, 1, 2, 3], [3, 2, 1, 0]], 4)
    d = compute_cluster_diagnostics(F, parts, DELTA, Fraction(1, 2))
    assert all(not q for q in d.Q_sets)
    assert d.X_F == 0 and d.bottleneck_ell is None


def test_buckets_by_hand():
    # k = 6, degrees 5,3,3,2,1,0 -> A_1 = [3,6), A_2 = [1.5,3), A_3 = [0.75,1.5)
    F = SubgraphF.from_edges(range(6), [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3)][:7])
    deg = F.degrees()
    assert deg == {0: 4, 1: 3, 2: 3, 3: 3, 4: 1, 5: 0}
    A = degree_buckets(F)
    assert len(A) == 3
    assert A[0] == {0, 1, 2, 3} and A[1] == set() and A[2] == {4}


def test_expected_X_by_enumeration():
    # exhaustive average of X_F over every map V(F) -> [m], one colour
    F = SubgraphF.from_edges(range(4), [(0, 1), (0, 2), (0, 3), (1, 2)])
    for m in (1, 2, 3):
        total = Fraction(0)
        maps = list(itertools.product(range(m), repeat=4))
        for assignment in maps:
            d = compute_cluster_diagnostics(F, partitions_from([assignment], m), DELTA, Fraction(1, 2))
            total += d.X_F
        assert total / len(maps) == expected_X(F, m, 1)
    assert expected_X(F, 3, 7) == 7 * expected_X(F, 3, 1)


def test_bad_pair_stats_degenerate_cases():
    F = SubgraphF.from_edges([0, 3, 5, 8], [(0, 3), (3, 5), (5, 8), (0, 8), (0, 5)])
    full = build_main_colouring(desk_params(6, 3, 4, n=10, m=5, p=1), 4)
    assert compute_bad_pair_stats(F, full).Z_value == 0
    one = build_main_colouring(desk_params(6, 3, 4, n=10, m=1, p="1/2"), 4)
    st_ = compute_bad_pair_stats(F, one)
    assert st_.Y_size == 0 and st_.Z_value == 0


def test_bad_pair_stats_bounds():
    art = build_main_colouring(desk_params(12, 8, 6, n=30, m=20, p="7/10"), 3)
    g = rng.stream(1, 0, rng.SAMPLING)
    for _ in range(50):
        F = sample_subgraph(30, 6, 7, g)
        st_ = compute_bad_pair_stats(F, art)
        assert 0 <= st_.Z_value <= st_.Y_size <= 12 * 7


def test_sample_subgraph_shape():
    g = rng.stream(3, 0, rng.SAMPLING)
    F = sample_subgraph(50, 8, 10, g)
    assert F.k == 8 and len(F.edges) == 10
    with pytest.raises(ValueError):
        sample_subgraph(50, 4, 7, g)


def test_max_bad_edges_extremes():
    none_bad = build_main_colouring(desk_params(6, 1, 4, n=20, m=10, p=1), 0)
    assert not none_bad.bad.any()
    assert max_bad_edges_over_sampled_cliques(none_bad, 5, 20, 0) == 0
    all_bad = build_main_colouring(desk_params(6, 3, 4, n=20, m=1), 0)
    assert max_bad_edges_over_sampled_cliques(all_bad, 5, 20, 0) == 10


def test_max_bad_edges_matches_direct_count():
    from setramsey.verifier import count_bad_edges_in_set
    art = build_main_colouring(desk_params(12, 8, 6, n=30, m=20, p="7/10"), 5)
    g = rng.stream(77, 0, rng.SAMPLING)
    best = 0
    bad = art.bad_edges
    for _ in range(30):
        best = max(best, count_bad_edges_in_set(rng.sample_without_replacement(g, 30, 6).tolist(), bad))
    assert max_bad_edges_over_sampled_cliques(art, 6, 30, 77) == best


subgraph_cases = st.integers(2, 12).flatmap(lambda k: st.tuples(
    st.just(k),
    st.integers(1, k * (k - 1) // 2),
    st.integers(1, 8),   # m
    st.integers(1, 12),  # r
    st.integers(0, 2**32),
))


@given(subgraph_cases)
def test_identities(case):
    k, t, m, r, seed = case
    g = rng.stream(seed, 0, rng.SAMPLING)
    F = sample_subgraph(k + 5, k, t, g)
    parts = [PartitionMap(i, m, rng.uniform_ints(rng.stream(seed, i, rng.PARTITION), m, k + 5))
             for i in range(r)]
    eps = Fraction(1, 3)
    d = compute_cluster_diagnostics(F, parts, DELTA, eps)
    deg = F.degrees()
    # bucket partition of positive-degree vertices
    union = set().union(*d.A_buckets)
    assert sum(len(a) for a in d.A_buckets) == len(union) == sum(1 for v in deg if deg[v] > 0)
    assert bucket_weight(F) <= Fraction(2 * t, k)
    assert d.X_F <= sum(Fraction(k, 2 ** (j - 1)) * s_j for j, s_j in enumerate(d.s_values, 1))
    assert claim_holds(F, d, eps, r)
    for i, q in enumerate(d.Q_sets):
        assert q == collision_sets(F, parts)[i]
