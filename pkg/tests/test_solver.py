from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import OCTAHEDRON, dense_habo
from tridom.errors import InvalidInput, StructureInvalid
from tridom.graph_core import undominated
from tridom.habo.graph import HaboGraph, ceil_half_plus
from tridom.habo.rules import RULES, lift
from tridom.habo.solver import (
    BASE_CASE_MAX_N,
    banded_min_dominating,
    base_case_dominate,
    ceil_2n_7,
    extract_habo,
    select_rule,
    solve_habo,
    terminal_dominate,
    terminal_pattern,
)
from tridom.testkit import GenConfig, Mode, exact_gamma, gen_habo

PRIORITY = ["R3", "R2", "R1", "Switch", "R4", "R5", "R6", "R7"]


def test_ceil_2n_7():
    assert [ceil_2n_7(n) for n in (6, 7, 8, 21, 22)] == [2, 2, 3, 6, 7]


# --------------------------------------------------------------------------
# selection


def test_select_r3_first():
    k = HaboGraph.from_kinds("O" + "B" * 7)
    rule, pos = select_rule(k)
    assert rule.name == "R3" and pos == 0


def test_select_r6():
    k = HaboGraph.from_kinds("BAOAOAOABBB")
    rule, pos = select_rule(k)
    assert rule.label == "R6" and pos == 6


def test_select_none_on_terminal():
    k = HaboGraph.from_kinds("ABBAOABBAO")
    assert k.dense
    assert select_rule(k) is None


def test_select_skips_r7_below_six_bs():
    k = HaboGraph.from_kinds("ABBAOABBBAO")
    assert k.segments.x2 == 5
    assert select_rule(k) is None


@given(dense_habo(n_min=21, n_max=70))
def test_selection_respects_priority(k):
    choice = select_rule(k)
    if choice is None:
        return
    chosen, _ = choice
    for name in PRIORITY[:PRIORITY.index(chosen.name)]:
        rule = RULES[name]
        if name == "Switch" or not any(k.segments.find(r.pattern) for r in (rule, rule.mirror())):
            continue
        # an earlier rule that matches is only passed over when it would break density
        dn, dt = rule.delta()
        assert k.t + dt < ceil_half_plus(k.n + dn)


# --------------------------------------------------------------------------
# base case


def test_base_case_octahedron():
    k = extract_habo(OCTAHEDRON)
    d = base_case_dominate(k)
    assert d.sorted() == [2, 5]


def test_base_case_n5():
    d = base_case_dominate(HaboGraph(5, {0, 1, 3}))
    assert d.size == 1


def test_base_case_n20():
    k = HaboGraph.from_kinds("BBBBBAAO")
    assert k.n == 20
    d = base_case_dominate(k)
    assert d.size == 6


def test_base_case_needs_shared_endpoint():
    with pytest.raises(StructureInvalid):
        base_case_dominate(HaboGraph.from_kinds("AOAOO"))


@given(dense_habo(n_min=5, n_max=BASE_CASE_MAX_N))
def test_base_case_bound(k):
    d = base_case_dominate(k)
    assert not undominated(d.vertices, k.adjacency())
    assert d.size <= 1 + -(-(k.n - 5) // 3)
    assert d.size <= ceil_2n_7(k.n)


# --------------------------------------------------------------------------
# terminal dynamic programme


def test_terminal_pattern_detection():
    assert terminal_pattern(HaboGraph.from_kinds("ABBAOABBBAO")) is None
    assert terminal_pattern(HaboGraph.from_kinds("ABBABBAO")) == (2, 1)
    assert terminal_pattern(HaboGraph.from_kinds("ABBAOABBAO")) == (2, 2)


def test_terminal_abbaoabbbao():
    k = HaboGraph.from_kinds("ABBAOABBBAO")
    assert k.n == 25
    assert terminal_dominate(k).size <= 6


def test_terminal_pattern_n19():
    k = HaboGraph.from_kinds("ABBABBAO")
    assert k.n == 19
    assert len(banded_min_dominating(k)) <= 5


@pytest.mark.parametrize("x, y", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_terminal_pattern_values(x, y):
    k = gen_habo(GenConfig(8 * x + 3 * y, 0, Mode.TERMINAL_PATTERN, x, y))
    d = banded_min_dominating(k)
    assert len(d) == exact_gamma(k)[0]
    assert len(d) <= 2 * x + y


@given(st.lists(st.sampled_from(["A", "B", "O"]), min_size=3, max_size=14))
def test_banded_dp_matches_oracle(word):
    try:
        k = HaboGraph.from_kinds("".join(word))
    except InvalidInput:
        return
    if k.n > 24:
        return
    d = banded_min_dominating(k)
    assert not undominated(d, k.adjacency())
    assert len(d) == exact_gamma(k)[0]


# --------------------------------------------------------------------------
# full driver


def test_solve_octahedron():
    d, trace = solve_habo(extract_habo(OCTAHEDRON))
    assert d.size == 2 and trace.finish == "BaseCase" and len(trace) == 0


def test_solve_n21_with_reductions():
    k = HaboGraph.from_kinds("AOAOABBBAA")
    assert k.n == 21 and k.dense
    d, trace = solve_habo(k)
    assert d.size <= 6
    assert len(trace) >= 1
    assert not undominated(d.vertices, k.adjacency())


def test_solve_requires_density():
    with pytest.raises(InvalidInput):
        solve_habo(HaboGraph(21, {1}))


def test_step_cap():
    k = HaboGraph.from_kinds("O" + "B" * 7)
    with pytest.raises(StructureInvalid):
        solve_habo(k, max_steps=0)


def test_trace_jsonl():
    k = gen_habo(GenConfig(60, 3, Mode.HABO_DENSE))
    d, trace = solve_habo(k)
    lines = trace.to_jsonl().splitlines()
    assert len(lines) == len(trace) + 1
    records = [json.loads(x) for x in lines]
    assert records[-1]["rule"] in ("BaseCase", "Terminal")
    assert all(r["case"] in ("hint", "derived") for r in records[:-1])
    assert sum(trace.rule_counts().values()) == len(trace)


@given(dense_habo(n_min=7, n_max=90))
def test_solve_certified_and_bounded(k):
    d, trace = solve_habo(k)
    assert not undominated(d.vertices, k.adjacency())
    assert d.size <= ceil_2n_7(k.n)


@given(dense_habo(n_min=21, n_max=60))
def test_trace_replays_frame_by_frame(k):
    d, trace = solve_habo(k)
    if not trace.frames:
        return
    last = trace.frames[-1].after
    if trace.finish == "BaseCase":
        cur = base_case_dominate(last)
    else:
        cur = terminal_dominate(last)
    for frame in reversed(trace.frames):
        assert cur.certified_against == frame.after.digest()
        nxt = lift(cur, frame)
        assert nxt.size <= cur.size + frame.rule.bound
        cur = nxt
    assert cur.vertices == d.vertices


@given(dense_habo(n_min=7, n_max=22))
def test_never_below_domination_number(k):
    d, _ = solve_habo(k)
    assert d.size >= exact_gamma(k)[0]
