import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxthick.graph import (
    Graph,
    find_induced_k23,
    find_k23_subgraph,
    induced,
    is_clique,
    join,
    mask_of,
)
from coxthick.racg import (
    OracleLimitError,
    Status,
    classify_racg,
    is_join_bruteforce,
    is_thick_order0,
    maximal_thick_sets_oracle,
    oracle_in_T,
    thick_fixed_point,
    thick_fixed_point_naive,
)

from _support import C4, C4_PENDANT, C5, all_graphs, graphs

K5 = Graph.complete(5)


def test_square_pool_is_everything():
    assert thick_fixed_point(C4).members == [0b1111]


def test_pentagon_pool_empty():
    assert thick_fixed_point(C5).members == []


def test_pendant_stays_outside():
    assert thick_fixed_point(C4_PENDANT).maximal() == [0b1111]


def test_cone_over_square_absorbs_apex():
    wheel = join(C4, Graph.empty(1))
    assert thick_fixed_point(wheel).spans()


def test_two_squares_sharing_a_diagonal_merge():
    # squares 0-1-2-3 and 0-4-2-5 share the nonadjacent pair {0, 2}
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (2, 5), (5, 0)])
    assert thick_fixed_point(g).spans()


def test_two_squares_sharing_an_edge_stay_apart():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 1)])
    assert classify_racg(g).peripherals == [(0, 1, 2, 3), (0, 1, 4, 5)]


@pytest.mark.parametrize("g, status", [
    (K5, Status.FINITE),
    (Graph.from_edges(4, [e for e in itertools.combinations(range(4), 2) if e != (0, 1)]),
     Status.VIRTUALLY_CYCLIC),
    (C4, Status.THICK),
    (C5, Status.HYPERBOLIC),
    (C4_PENDANT, Status.RELATIVELY_HYPERBOLIC),
    (Graph.empty(0), Status.FINITE),
    (Graph.empty(2), Status.VIRTUALLY_CYCLIC),
])
def test_classify_examples(g, status):
    assert classify_racg(g).status == status


def test_square_report():
    rep = classify_racg(C4)
    assert rep.order0 and rep.peripherals == []
    assert rep.as_dict() == {"status": "Thick", "order0": True, "peripherals": []}


def test_pendant_report():
    rep = classify_racg(C4_PENDANT)
    assert rep.peripherals == [(0, 1, 2, 3)]


def test_trace_mentions_square():
    rep = classify_racg(C4_PENDANT, trace=True)
    assert any(line.startswith("square") for line in rep.pool_trace)


@pytest.mark.parametrize("g, expect", [
    (C4, True),
    (join(C4, Graph.empty(1)), True),
    (Graph.path(4), False),
    (K5, False),
])
def test_order0_examples(g, expect):
    assert is_thick_order0(g) == expect


def test_oracle_examples():
    assert oracle_in_T(C4)
    assert not oracle_in_T(C5)
    assert sum(oracle_in_T(g) for g in all_graphs(4)) == 3
    with pytest.raises(OracleLimitError):
        oracle_in_T(Graph.empty(9))


@pytest.mark.parametrize("n", range(0, 6))
def test_oracle_equivalence_small(n):
    for g in all_graphs(n):
        assert (classify_racg(g).status == Status.THICK) == oracle_in_T(g)


@pytest.mark.parametrize("n", range(4, 7))
def test_pool_maxima_match_oracle(n):
    for g in all_graphs(n):
        pool = thick_fixed_point(g)
        assert pool.as_sets() == maximal_thick_sets_oracle(g)


@given(graphs(max_n=7), st.integers(0, 2**32 - 1))
def test_confluence_random_order(g, seed):
    fast = thick_fixed_point(g).maximal()
    assert thick_fixed_point_naive(g, random.Random(seed)).maximal() == fast


@given(graphs(max_n=7), st.permutations(range(7)))
def test_relabelling_equivariance(g, perm):
    perm = [p for p in perm if p < g.n]
    h = g.relabel(perm)
    moved = {frozenset(perm[v] for v in P) for P in thick_fixed_point(g).as_sets()}
    assert moved == thick_fixed_point(h).as_sets()


def test_peripherals_sound_and_meet_in_cliques():
    for g in all_graphs(6):
        rep = classify_racg(g)
        if rep.status != Status.RELATIVELY_HYPERBOLIC:
            continue
        masks = [mask_of(P) for P in rep.peripherals]
        for P in masks:
            assert oracle_in_T(induced(g, P))
        for P, Q in itertools.combinations(masks, 2):
            assert is_clique(g, P & Q)


@given(graphs(min_n=6, max_n=16))
def test_peripheral_intersections_are_cliques(g):
    rep = classify_racg(g)
    masks = [mask_of(P) for P in rep.peripherals]
    for P, Q in itertools.combinations(masks, 2):
        assert is_clique(g, P & Q)


def test_thick_graphs_are_square_or_contain_k23():
    for n in range(4, 7):
        for g in all_graphs(n):
            if classify_racg(g).status != Status.THICK:
                continue
            is_square = n == 4 and all(g.degree(v) == 2 for v in range(4))
            assert is_square or find_k23_subgraph(g) is not None


def test_thick_without_induced_k23():
    # square plus a vertex adjacent to three of its corners: thick, yet no
    # five vertices induce K_{2,3}
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2)])
    assert classify_racg(g).status == Status.THICK
    assert find_induced_k23(g) is None


@pytest.mark.parametrize("n", range(0, 7))
def test_order0_matches_bipartition_search(n):
    for g in all_graphs(n):
        o0 = is_thick_order0(g)
        assert o0 == is_join_bruteforce(g)
        if o0:
            assert classify_racg(g).status == Status.THICK


@given(graphs(min_n=7, max_n=7))
def test_order0_matches_bipartition_search_n7(g):
    assert is_thick_order0(g) == is_join_bruteforce(g)


def test_large_sparse_graph_runs():
    rng = random.Random(9)
    n = 400
    g = Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2)
                             if rng.random() < 0.012])
    rep = classify_racg(g)
    for P in rep.peripherals:
        assert len(P) >= 4
