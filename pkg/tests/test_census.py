from pathlib import Path

import pytest
from hypothesis import given

from coxthick.census import (
    C9,
    T9,
    CheckpointError,
    census,
    census_bruteforce,
    graph_at,
    index_of,
    plan_ranges,
    scan_range,
)
from coxthick.graph import Graph

from _support import graphs


def test_index_order_fills_lower_triangle_row_by_row():
    assert graph_at(1, 4).edges() == [(0, 1)]
    assert graph_at(2, 4).edges() == [(0, 2)]
    assert graph_at(4, 4).edges() == [(1, 2)]
    assert graph_at(8, 4).edges() == [(0, 3)]
    assert graph_at(63, 4) == Graph.complete(4)


@given(graphs(max_n=9))
def test_index_round_trip(g):
    assert graph_at(index_of(g), g.n) == g


@pytest.mark.parametrize("n, t, c", [(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (4, 3, 27)])
def test_tiny_censuses(n, t, c):
    res = census(n)
    assert (res.t, res.c) == (t, c)
    assert res.graphs_scanned == 2 ** (n * (n - 1) // 2)


def test_four_vertex_thick_graphs_are_the_squares():
    thick = [i for i in range(64) if scan_range(4, i, i + 1)[0]]
    assert sorted(graph_at(i, 4).num_edges for i in thick) == [4, 4, 4]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_matches_independent_path(n):
    fast, slow = census(n), census_bruteforce(n)
    assert (fast.t, fast.c) == (slow.t, slow.c)
    assert fast.c >= fast.t * (n + 1)


def test_frozen_six_vertex_values():
    # independent brute-force path, recorded once
    assert (census(6).t, census(6).c) == (1840, 40375)


def test_partition_invariance():
    a = census(6, chunk=1000)
    b = census(6, workers=2, chunk=4096)
    assert (a.t, a.c) == (b.t, b.c)


def test_checkpoint_written_and_resumed(tmp_path):
    ck = tmp_path / "c6.ckpt"
    full = census(6, checkpoint=ck, chunk=4096)
    lines = ck.read_text().splitlines()
    assert lines[-1] == f"RESULT 6 {full.t} {full.c}"
    assert len(lines) == 9
    # drop the tail as if the run had been killed after three ranges
    ck.write_text("\n".join(lines[:3]) + "\n")
    seen = []
    res = census(6, checkpoint=ck, chunk=4096, progress=lambda s, e, t, c: seen.append(s))
    assert (res.t, res.c) == (full.t, full.c)
    assert seen == [s for s, _ in plan_ranges(6, 4096)[3:]]


def test_checkpoint_n_mismatch(tmp_path):
    ck = tmp_path / "c.ckpt"
    census(5, checkpoint=ck)
    with pytest.raises(CheckpointError, match="n=5"):
        census(6, checkpoint=ck)


def test_checkpoint_malformed(tmp_path):
    ck = tmp_path / "c.ckpt"
    ck.write_text("5 0 1024\n")
    with pytest.raises(CheckpointError):
        census(5, checkpoint=ck)


def test_checkpoint_from_other_plan(tmp_path):
    ck = tmp_path / "c.ckpt"
    census(6, checkpoint=ck, chunk=4096)
    with pytest.raises(CheckpointError):
        census(6, checkpoint=ck, chunk=1000)


def test_refuses_large_n():
    with pytest.raises(ValueError):
        census(10)


def test_sentence_mentions_both_constants():
    s = census(4).sentence()
    assert "3 thick graphs" in s and "27 cliques" in s


@pytest.mark.census9
def test_nine_vertex_census():
    ck = Path(__file__).resolve().parent.parent / "runs" / "census9.ckpt"
    ck.parent.mkdir(exist_ok=True)
    res = census(9, workers=8, checkpoint=ck)
    assert (res.t, res.c) == (T9, C9)
