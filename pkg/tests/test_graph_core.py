from __future__ import annotations

import pytest
from hypothesis import given

from conftest import ALT_OCTAHEDRON, K4, OCTAHEDRON, cc, min_deg4_triangulations, triangulations
from tridom.errors import (
    BudgetExhausted,
    DuplicateEdge,
    InvalidInput,
    MalformedLine,
    NotHamiltonCycle,
    NotPlanarWithThisCycle,
    SelfLoop,
    VertexOutOfRange,
)
from tridom.graph_core import (
    ChordedCycle,
    DominatingSet,
    RawGraph,
    Side,
    chord_counts,
    crosses,
    degree,
    find_hamilton_cycle,
    format_edge_list,
    has_universal_vertex,
    parse_chorded,
    parse_edge_list,
    side_degree,
    split_chords,
    two_chords,
    two_vertices,
    undominated,
    validate,
)

I, O = Side.INNER, Side.OUTER


def complete(n):
    return RawGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


# --------------------------------------------------------------------------
# validate


def test_octahedron_validates():
    report = validate(OCTAHEDRON, require_min_degree_4=True)
    assert report.overall
    assert report.failed() == []


def test_alternate_embedding_validates():
    assert validate(ALT_OCTAHEDRON, require_min_degree_4=True).overall


def test_missing_outer_chord_fails_outer_triangulated():
    bad = cc(6, OCTAHEDRON.inner, {(1, 4), (2, 4)})
    report = validate(bad)
    assert not report.overall
    assert [c.name for c in report.failed()] == ["outer-triangulated"]


def test_crossing_chords_are_reported():
    bad = cc(6, {(0, 3), (1, 4), (2, 4)}, OCTAHEDRON.outer - {(1, 4)} | {(0, 4)})
    names = {c.name for c in validate(bad).failed()}
    assert "inner-non-crossing" in names


def test_shared_chord_fails_sides_disjoint():
    bad = cc(6, {(0, 2), (0, 3), (3, 5)}, {(0, 2), (2, 5), (3, 5)})
    assert "sides-disjoint" in {c.name for c in validate(bad).failed()}


def test_min_degree_check_only_when_asked():
    fan = cc(6, {(0, 2), (0, 3), (0, 4)}, {(1, 3), (1, 4), (1, 5)})
    assert validate(fan).overall
    failed = validate(fan, require_min_degree_4=True).failed()
    assert [c.name for c in failed] == ["min-degree-4"]


def test_report_to_dict_lists_checks():
    d = validate(OCTAHEDRON).to_dict()
    assert d["overall"] is True
    assert all({"name", "passed", "detail"} <= set(c) for c in d["checks"])


# --------------------------------------------------------------------------
# degree queries


def test_degree_examples():
    assert degree(OCTAHEDRON, 0) == 4
    assert degree(K4, 1) == 3
    assert degree(cc(5), 3) == 2


def test_side_degree_examples():
    assert side_degree(OCTAHEDRON, 1, I) == 2
    assert side_degree(OCTAHEDRON, 0, I) == 4
    assert side_degree(OCTAHEDRON, 0, O) == 2


def test_two_vertices_alternate_embedding():
    assert two_vertices(ALT_OCTAHEDRON) == [(0, O), (1, I), (2, O), (3, I), (4, O), (5, I)]


def test_two_vertices_square():
    assert two_vertices(K4) == [(0, O), (1, I), (2, O), (3, I)]


def test_two_vertices_octahedron():
    assert two_vertices(OCTAHEDRON) == [(0, O), (1, I), (3, O), (4, I)]


def test_two_chords_octahedron():
    assert sorted(two_chords(OCTAHEDRON, I)) == [(0, 2), (3, 5)]
    assert sorted(two_chords(OCTAHEDRON, O)) == [(1, 5), (2, 4)]


def test_chord_counts_examples():
    assert chord_counts(OCTAHEDRON) == (2, 2)
    assert chord_counts(ALT_OCTAHEDRON) == (3, 3)
    fan = cc(6, {(0, 2), (0, 3), (0, 4)}, {(1, 3), (1, 4), (1, 5)})
    assert chord_counts(fan)[0] == 2


def test_universal_vertex():
    assert has_universal_vertex(K4) is not None
    assert has_universal_vertex(OCTAHEDRON) is None
    wheel = cc(5, {(0, 2), (0, 3)}, {(1, 3), (1, 4)})
    assert has_universal_vertex(wheel) == 0


def test_vertex_out_of_range():
    with pytest.raises(InvalidInput):
        degree(OCTAHEDRON, 6)


# --------------------------------------------------------------------------
# parsing


def test_parse_edge_list_triangle():
    g = parse_edge_list("3\n0 1\n1 2\n2 0\n")
    assert g.vertex_count == 3
    assert sorted(g.edges) == [(0, 1), (0, 2), (1, 2)]


def test_parse_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# triangle\n3\n\n0 1  # first\n1 2\n2 0\n")
    assert len(g.edges) == 3


@pytest.mark.parametrize("text, exc, line", [
    ("3\n0 0\n", SelfLoop, 2),
    ("3\n0 1\n1 0\n", DuplicateEdge, 3),
    ("3\n0 1\n1 3\n", VertexOutOfRange, 3),
    ("3\n0 1 2\n", MalformedLine, 2),
    ("three\n", MalformedLine, 1),
    ("", MalformedLine, 1),
])
def test_parse_edge_list_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_parse_chorded_round_trip():
    for g in (OCTAHEDRON, ALT_OCTAHEDRON, K4):
        assert parse_chorded(g.to_text()) == g


def test_parse_chorded_errors():
    with pytest.raises(MalformedLine):
        parse_chorded("6\nX 0 2\n")
    with pytest.raises(MalformedLine):
        parse_chorded("6\nI 0 2 3\n")
    with pytest.raises(VertexOutOfRange):
        parse_chorded("6\nI 0 7\n")
    with pytest.raises(DuplicateEdge):
        parse_chorded("6\nI 0 2 2 0\n")


def test_digest_ignores_side_assignment():
    swapped = ChordedCycle(6, OCTAHEDRON.outer, OCTAHEDRON.inner)
    assert swapped.digest() == OCTAHEDRON.digest()
    assert ALT_OCTAHEDRON.digest() != OCTAHEDRON.digest()


# --------------------------------------------------------------------------
# Hamilton cycles and split_chords


def _is_hamilton(g: RawGraph, cycle) -> bool:
    adj = g.adjacency()
    n = g.vertex_count
    return sorted(cycle) == list(range(n)) and all(
        cycle[(i + 1) % n] in adj[cycle[i]] for i in range(n))


def test_hamilton_octahedron():
    g = OCTAHEDRON.to_raw()
    cycle = find_hamilton_cycle(g)
    assert len(cycle) == 6 and _is_hamilton(g, cycle)


def test_hamilton_k4():
    cycle = find_hamilton_cycle(complete(4))
    assert len(cycle) == 4 and _is_hamilton(complete(4), cycle)


def test_hamilton_star_has_none():
    star = RawGraph(4, ((0, 1), (0, 2), (0, 3)))
    assert find_hamilton_cycle(star) is None


def test_hamilton_petersen_proven_absent():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    petersen = RawGraph(10, tuple(outer + spokes + inner))
    assert find_hamilton_cycle(petersen) is None


def test_hamilton_budget_exhausted():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    petersen = RawGraph(10, tuple(outer + spokes + inner))
    with pytest.raises(BudgetExhausted):
        find_hamilton_cycle(petersen, budget=3)


def test_split_chords_k5_not_planar():
    with pytest.raises(NotPlanarWithThisCycle):
        split_chords(complete(5), [0, 1, 2, 3, 4])


def test_split_chords_rejects_non_cycle():
    with pytest.raises(NotHamiltonCycle):
        split_chords(OCTAHEDRON.to_raw(), [0, 1, 2, 3, 4])
    with pytest.raises(NotHamiltonCycle):
        split_chords(OCTAHEDRON.to_raw(), [0, 2, 1, 3, 4, 5])  # (1, 3) is absent


def test_split_chords_octahedron_from_edges():
    g = OCTAHEDRON.to_raw()
    out = split_chords(g, find_hamilton_cycle(g))
    assert validate(out, require_min_degree_4=True).overall


def test_format_edge_list_round_trip():
    g = OCTAHEDRON.to_raw()
    assert sorted(parse_edge_list(format_edge_list(g)).edges) == sorted(g.edges)


def test_crosses():
    assert crosses((0, 2), (1, 3))
    assert not crosses((0, 2), (2, 4))
    assert not crosses((0, 5), (1, 3))


# --------------------------------------------------------------------------
# dominating sets


def test_dominating_set_certify():
    d = DominatingSet.certify({0, 1}, OCTAHEDRON.adjacency(), OCTAHEDRON.digest())
    assert d.size == 2 and d.sorted() == [0, 1]
    with pytest.raises(ValueError):
        DominatingSet.certify({0}, OCTAHEDRON.adjacency(), OCTAHEDRON.digest())


def test_undominated_lists_missing():
    assert undominated({0}, OCTAHEDRON.adjacency()) == [4]


# --------------------------------------------------------------------------
# invariants


@given(triangulations())
def test_chord_total_and_degree_sum(g):
    n = g.n
    assert len(g.inner) + len(g.outer) == 2 * n - 6
    assert sum(degree(g, v) for v in range(n)) == 6 * n - 12


@given(triangulations(n_min=5))
def test_two_chords_match_two_vertices(g):
    # at n = 4 the single chord of a side is the 2-chord of both its ears
    for side in Side:
        ears = [v for v, s in two_vertices(g) if s is side]
        assert len(two_chords(g, side)) == len(ears)


@given(triangulations(n_min=5))
def test_every_side_has_two_ears(g):
    for side in Side:
        assert sum(1 for _, s in two_vertices(g) if s is side) >= 2


@given(min_deg4_triangulations())
def test_min_degree_4_forbids_double_two_vertex(g):
    for v in range(g.n):
        assert not (side_degree(g, v, I) == 2 and side_degree(g, v, O) == 2)


@given(min_deg4_triangulations())
def test_min_degree_4_has_no_universal_vertex(g):
    assert has_universal_vertex(g) is None


@given(triangulations())
def test_split_chords_round_trip_up_to_swap(g):
    back = split_chords(g.to_raw(), list(range(g.n)))
    assert {back.inner, back.outer} == {g.inner, g.outer}
