from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tridom.graph_core import ChordedCycle
from tridom.testkit import GenConfig, Mode, gen_habo, gen_triangulation

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def cc(n, inner=(), outer=()):
    return ChordedCycle(n, frozenset(inner), frozenset(outer))


OCTAHEDRON = cc(6, {(0, 2), (0, 3), (3, 5)}, {(1, 4), (2, 4), (1, 5)})
ALT_OCTAHEDRON = cc(6, {(0, 2), (2, 4), (0, 4)}, {(1, 3), (3, 5), (1, 5)})
K4 = cc(4, {(0, 2)}, {(1, 3)})


@pytest.fixture
def octahedron():
    return OCTAHEDRON


@pytest.fixture
def alt_octahedron():
    return ALT_OCTAHEDRON


@st.composite
def triangulations(draw, n_min=4, n_max=24):
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 2**32 - 1))
    return gen_triangulation(GenConfig(n, seed, Mode.RANDOM_TRIANGULATION))


@st.composite
def min_deg4_triangulations(draw, n_min=6, n_max=24):
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 2**32 - 1))
    mode = draw(st.sampled_from([Mode.MIN_DEG4_TRIANGULATION, Mode.DENSE_TRIANGULATION]))
    return gen_triangulation(GenConfig(n, seed, mode))


@st.composite
def dense_habo(draw, n_min=7, n_max=60):
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 2**32 - 1))
    return gen_habo(GenConfig(n, seed, Mode.HABO_DENSE))
