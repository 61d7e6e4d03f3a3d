from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import ALT_OCTAHEDRON, OCTAHEDRON, cc, min_deg4_triangulations
from tridom.errors import InvalidInput, ValidationFailed
from tridom.graph_core import chord_counts
from tridom.habo.solver import extract_habo
from tridom.normalize import normalize
from tridom.pipeline import Branch, bound_table, dominate, verify_dominating
from tridom.testkit import exact_gamma


@pytest.mark.parametrize("n, row", [
    (22, (7, 6, 7, True)),
    (26, (8, 8, 8, False)),
    (7, (2, 2, 2, False)),
    (6, (2, 1, 2, True)),
    (18, (6, 5, 6, True)),
])
def test_bound_table(n, row):
    r = bound_table(n)
    assert (r.two_sevenths, r.five_sixteenths, r.max, r.exceptional) == row


def test_bound_table_against_exact_fractions():
    for n in range(1, 10_001):
        a, b = math.ceil(Fraction(2 * n, 7)), math.floor(Fraction(5 * n, 16))
        r = bound_table(n)
        assert (r.two_sevenths, r.five_sixteenths, r.max, r.exceptional) == (a, b, max(a, b), a > b)


def test_verify_dominating():
    assert verify_dominating(OCTAHEDRON, {0, 4})
    assert not verify_dominating(OCTAHEDRON, {0})
    with pytest.raises(InvalidInput):
        verify_dominating(OCTAHEDRON, {7})


def test_dominate_octahedron():
    cert = dominate(OCTAHEDRON)
    assert cert.set.size == 2 and cert.bound == 2 and cert.valid
    assert cert.branch is Branch.HABO
    assert verify_dominating(OCTAHEDRON, cert.set.vertices)


def test_dominate_alternate_embedding():
    cert = dominate(ALT_OCTAHEDRON)
    assert cert.set.size == 2 and cert.trace["normalization_steps"] >= 1
    assert cert.set.certified_against == ALT_OCTAHEDRON.digest()


def test_certificate_json():
    d = json.loads(dominate(OCTAHEDRON).to_json())
    assert set(d) == {"n", "branch", "set", "bound", "valid", "trace_length"}
    assert d["valid"] is True


def test_rejects_low_degree():
    fan = cc(6, {(0, 2), (0, 3), (0, 4)}, {(1, 3), (1, 4), (1, 5)})
    with pytest.raises(ValidationFailed) as info:
        dominate(fan)
    assert [c.name for c in info.value.report.failed()] == ["min-degree-4"]


@given(min_deg4_triangulations(n_max=40))
def test_main_bound(g):
    cert = dominate(g)
    assert verify_dominating(g, cert.set.vertices)
    assert cert.set.size <= bound_table(g.n).max


@given(min_deg4_triangulations(n_max=40))
def test_branch_dichotomy(g):
    cert = dominate(g)
    norm = normalize(g)
    t_inner, t_outer = chord_counts(norm.cc)
    if cert.branch is Branch.OUTERPLANAR_INNER:
        assert 4 * t_inner <= g.n
    elif cert.branch is Branch.OUTERPLANAR_OUTER:
        assert 4 * t_inner > g.n >= 4 * t_outer
    else:
        assert cert.branch is Branch.HABO
        assert 4 * t_inner > g.n and 4 * t_outer > g.n
        assert extract_habo(norm.cc).dense


@given(min_deg4_triangulations(n_max=30))
def test_deterministic(g):
    assert dominate(g).to_json() == dominate(g).to_json()


@given(min_deg4_triangulations(n_max=20))
def test_not_below_gamma(g):
    assert dominate(g).set.size >= exact_gamma(g)[0]
