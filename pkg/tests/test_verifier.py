import itertools
import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from setramsey.colouring import SetColouring, edge_pairs, num_edges
from setramsey.construction import build_main_colouring, build_simple_colouring
from setramsey.oracle import brute_force_mono_clique
from setramsey.params import desk_params
from setramsey.verifier import (ColourClassGraph, TuranPreconditionError, check_min_colours,
                                clique_numbers, count_bad_edges_in_set, densest_colour,
                                find_monochromatic_clique, turan_extract_clique, verify)


def random_colouring(n, r, seed, density=0.5):
    rnd = random.Random(seed)
    masks = [sum(1 << i for i in range(r) if rnd.random() < density) for _ in range(num_edges(n))]
    return SetColouring.from_masks(n, r, masks)


def random_s_colouring(n, r, s, seed):
    rnd = random.Random(seed)
    masks = [sum(1 << c for c in rnd.sample(range(r), s)) for _ in range(num_edges(n))]
    return SetColouring.from_masks(n, r, masks)


def test_check_min_colours():
    c = SetColouring.from_masks(3, 3, [0b111, 0b001, 0b011])
    assert check_min_colours(c, 0) == []
    assert check_min_colours(c, 2) == [(0, 2, 1)]
    assert check_min_colours(c, 3) == [(0, 2, 1), (1, 2, 2)]


def test_min_colours_single_part_main():
    art = build_main_colouring(desk_params(8, 4, 5, n=12, m=1), 0)
    assert len(check_min_colours(art.colouring, 4)) == comb(12, 2)


def test_full_masks_give_colour_zero_witness():
    c = SetColouring.constant(7, 3, range(3))
    w = find_monochromatic_clique(c, 4)
    assert w.colour_index == 0 and len(w.vertices) == 4
    assert w.check(c)
    assert w.vertices == (0, 1, 2, 3)


def test_lowest_colour_is_reported():
    # colour 0 is empty, colour 2 complete, colour 1 a triangle on {3,4,5}
    n = 6
    masks = []
    for u, v in zip(*edge_pairs(n)):
        m = 1 << 2
        if u >= 3 and v >= 3:
            m |= 1 << 1
        masks.append(m)
    c = SetColouring.from_masks(n, 3, masks)
    w = find_monochromatic_clique(c, 3)
    assert w.colour_index == 1 and w.vertices == (3, 4, 5)
    assert find_monochromatic_clique(c, 3, threads=3) == w


def test_simple_construction_has_no_kk():
    for seed in range(10):
        art = build_simple_colouring(10, 7, 5, 30, seed)
        assert find_monochromatic_clique(art.colouring, 5) is None


def test_verify_flags():
    c = SetColouring.constant(5, 2, range(2))
    rep = verify(c, 2, 3)
    assert rep.min_colour_ok and not rep.clique_free and rep.witness.check(c)
    empty = SetColouring.constant(5, 3, [])
    rep = verify(empty, 1, 3)
    assert not rep.min_colour_ok and len(rep.violating_edges) == 10
    assert rep.clique_free and not rep.valid


def test_verify_exhaustive_reports_clique_numbers():
    c = SetColouring.from_masks(4, 2, [0b01, 0b01, 0b10, 0b01, 0b10, 0b10])
    rep = verify(c, 1, 4, exhaustive=True)
    assert rep.per_colour_clique_numbers == clique_numbers(c) == [3, 2]
    assert rep.valid


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_brute_force(seed):
    rnd = random.Random(seed)
    n, r, k = rnd.randint(4, 12), rnd.randint(1, 3), rnd.randint(2, 5)
    c = random_colouring(n, r, seed, density=rnd.choice([0.4, 0.6, 0.8]))
    fast = find_monochromatic_clique(c, k)
    slow = brute_force_mono_clique(c, k)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert fast.check(c)
        assert fast.colour_index == slow.colour_index


@given(st.integers(3, 8), st.integers(1, 4), st.integers(2, 4), st.integers(0, 10**6))
def test_anti_monotone_under_clearing_bits(n, r, k, seed):
    c = random_colouring(n, r, seed, 0.7)
    if find_monochromatic_clique(c, k) is not None:
        return
    rnd = random.Random(seed + 1)
    cleared = SetColouring.from_masks(n, r, [m & rnd.getrandbits(r) for m in c.masks()])
    assert find_monochromatic_clique(cleared, k) is None


def test_colour_class_graph():
    c = SetColouring.from_masks(3, 2, [0b01, 0b11, 0b10])
    g = ColourClassGraph.of(c, 0)
    assert g.adjacency == (0b110, 0b001, 0b001)
    assert g.edge_count() == 2
    assert densest_colour(c) == 0  # tie 2-2 goes to the lower index


def test_turan_complete_graph():
    c = SetColouring.constant(5, 1, [0])
    w = turan_extract_clique(ColourClassGraph.of(c, 0), 5)
    assert w.vertices == (0, 1, 2, 3, 4)


def test_turan_extremal_graph_rejected():
    n, k = 9, 4
    part = [v % (k - 1) for v in range(n)]
    masks = [int(part[u] != part[v]) for u, v in zip(*edge_pairs(n))]
    c = SetColouring.from_masks(n, 1, masks)
    with pytest.raises(TuranPreconditionError):
        turan_extract_clique(ColourClassGraph.of(c, 0), k)


def test_turan_pigeonhole_small():
    for seed in range(20):
        c = random_s_colouring(9, 3, 2, seed)
        g = ColourClassGraph.of(c, densest_colour(c))
        assert g.edge_count() >= 24
        w = turan_extract_clique(g, 3)
        assert len(w.vertices) == 3 and w.check(c)


def test_count_bad_edges_in_set():
    assert count_bad_edges_in_set([0, 1, 2], []) == 0
    all_pairs = list(itertools.combinations(range(6), 2))
    assert count_bad_edges_in_set([1, 3, 4, 5], all_pairs) == 6
    assert count_bad_edges_in_set([4, 1], [(4, 1)]) == 1
