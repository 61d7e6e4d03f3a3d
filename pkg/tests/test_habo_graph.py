from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import OCTAHEDRON, cc, dense_habo
from tridom.errors import InvalidInput, MalformedLine, NotNormalized, RunTooLong
from tridom.habo.graph import (
    SEGMENT_EDGES,
    SEGMENT_HATS,
    HaboGraph,
    ceil_half_plus,
    parse_habo,
    parse_segments,
)
from tridom.habo.solver import extract_habo


def test_single_hat():
    segs = parse_segments(7, {1})
    assert segs.kinds == "AOOOOO"
    assert [(s.kind, s.start) for s in segs.segments][:2] == [("A", 0), ("O", 2)]
    assert [s.start for s in segs.segments if s.kind == "O"] == [2, 3, 4, 5, 6]


def test_separate_b_and_a():
    segs = parse_segments(8, {1, 2, 5})
    assert [(s.kind, s.start) for s in segs.segments if s.kind != "O"] == [("B", 0), ("A", 4)]
    assert sorted(segs.string_kinds()) == ["A", "B"]
    assert segs.x1 == 1 and segs.x2 == 1


def test_mixed_string():
    segs = parse_segments(11, {1, 3, 4})
    assert [(s.kind, s.start) for s in segs.segments if s.kind != "O"] == [("A", 0), ("B", 2)]
    assert segs.string_kinds() == ["AB"]
    assert segs.y == 1


def test_run_of_three_rejected():
    with pytest.raises(RunTooLong):
        parse_segments(9, {1, 2, 3})
    with pytest.raises(RunTooLong):
        parse_segments(5, range(5))


def test_wrapping_runs():
    segs = parse_segments(9, {0, 8})
    assert [(s.kind, s.start) for s in segs.segments if s.kind != "O"] == [("B", 7)]


def test_isolated_a():
    segs = HaboGraph.from_kinds("AOBO").segments
    assert segs.is_isolated_a(0)
    assert not segs.is_isolated_a(2)


def test_find_is_cyclic():
    segs = HaboGraph.from_kinds("BOOAA").segments
    assert segs.find("AAB") == [3]
    assert segs.find("AB") == [4]
    assert segs.find("OB") == []


def test_from_kinds_and_offset():
    k = HaboGraph.from_kinds("ABBAO")
    assert k.n == 11 and k.t == 6
    assert k.hats == {1, 3, 4, 6, 7, 9}
    shifted = HaboGraph.from_kinds("ABBAO", 3)
    assert shifted.hats == {(h + 3) % 11 for h in k.hats}
    assert shifted.segments.kinds in ("ABBAO", "OABBA", "AOABB", "BAOAB", "BBAOA")


def test_density_threshold():
    assert ceil_half_plus(21) == 11 and ceil_half_plus(22) == 12
    assert HaboGraph.from_kinds("ABBAO").dense
    assert not HaboGraph(7, {1}).dense


def test_adjacency_is_cycle_plus_chords():
    k = HaboGraph(7, {1})
    adj = k.adjacency()
    assert adj[0] == {1, 2, 6}
    assert adj[1] == {0, 2}


def test_small_n_rejected():
    with pytest.raises(InvalidInput):
        HaboGraph(4, {1})
    with pytest.raises(InvalidInput):
        HaboGraph(7, {9})


def test_text_round_trip():
    k = HaboGraph.from_kinds("ABBAOABBBAO")
    assert parse_habo(k.to_text()) == k
    with pytest.raises(MalformedLine):
        parse_habo("7\nI 1\n")


def test_extract_octahedron():
    k = extract_habo(OCTAHEDRON)
    assert k.hats == {0, 1, 3, 4}
    assert k.segments.kinds == "BB"


def test_extract_single_hat():
    k = extract_habo(cc(7, {(0, 2)}))
    assert k.segments.kinds == "A" + "O" * 5


def test_extract_rejects_long_run():
    fan = cc(7, {(0, 2), (0, 3), (0, 4), (0, 5)}, {(1, 3), (3, 5), (5, 1), (1, 6)})
    with pytest.raises(NotNormalized):
        extract_habo(fan)


@given(st.integers(5, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, n - 1), max_size=n - 1))))
def test_segments_tile_cycle(case):
    n, hats = case
    try:
        segs = parse_segments(n, hats)
    except RunTooLong:
        return
    assert sum(SEGMENT_EDGES[c] for c in segs.kinds) == n
    assert sum(len(SEGMENT_HATS[c]) for c in segs.kinds) == len(hats)
    covered = sorted(e for s in segs.segments for e in range(s.start, s.start + s.edges))
    assert sorted(e % n for e in covered) == list(range(n))
    for s in segs.segments:
        assert {(s.start + h) % n for h in SEGMENT_HATS[s.kind]} <= set(hats)


@given(dense_habo())
def test_generated_graphs_are_dense(k):
    assert k.dense and k.t >= ceil_half_plus(k.n)
    assert HaboGraph.from_kinds(k.segments.kinds).t == k.t
