"""Exact domination oracle and seeded instance generators."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import FeasibilityTimeout, Infeasible, TooLarge
from .graph_core import ChordedCycle, validate
from .habo.graph import SEGMENT_EDGES, SEGMENT_HATS, HaboGraph, ceil_half_plus

ORACLE_MAX_N = 30
REJECTION_CAP = 100_000


def _adjacency(g) -> list[set[int]]:
    if hasattr(g, "adjacency"):
        g = g.adjacency()
    return [set(a) for a in g]


def _closed_masks(adj: Sequence[set[int]]) -> list[int]:
    return [(1 << v) | sum(1 << u for u in adj[v]) for v in range(len(adj))]


def exact_gamma(g) -> tuple[int, frozenset]:
    """Domination number and a witness by branch and bound (``n <= 30``).

    Branches on the undominated vertex with the fewest possible dominators,
    trying those dominators in ascending order.  The bound counts undominated
    vertices with pairwise disjoint closed neighbourhoods, each of which needs
    its own dominator.
    """
    adj = _adjacency(g)
    n = len(adj)
    if n > ORACLE_MAX_N:
        raise TooLarge(f"exact oracle limited to n <= {ORACLE_MAX_N}, got {n}")
    if n == 0:
        return 0, frozenset()
    nb = _closed_masks(adj)
    full = (1 << n) - 1
    best = [n, full]

    def packing(covered: int) -> int:
        used = count = 0
        for v in range(n):
            if not covered >> v & 1 and not nb[v] & used:
                used |= nb[v]
                count += 1
        return count

    def search(chosen: int, covered: int, size: int) -> None:
        if covered == full:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + packing(covered) >= best[0]:
            return
        pick = min((v for v in range(n) if not covered >> v & 1),
                   key=lambda v: (bin(nb[v]).count("1"), v))
        m, u = nb[pick], 0
        while m:
            if m & 1:
                search(chosen | 1 << u, covered | nb[u], size + 1)
            m >>= 1
            u += 1

    search(0, 0, 0)
    return best[0], frozenset(v for v in range(n) if best[1] >> v & 1)


def brute_gamma(g) -> tuple[int, frozenset]:
    """Domination number by trying all subsets in order of size."""
    adj = _adjacency(g)
    n = len(adj)
    nb = _closed_masks(adj)
    full = (1 << n) - 1
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            cov = 0
            for v in combo:
                cov |= nb[v]
            if cov == full:
                return size, frozenset(combo)
    raise AssertionError("unreachable")


class Mode(enum.Enum):
    RANDOM_TRIANGULATION = "RandomTriangulation"
    MIN_DEG4_TRIANGULATION = "MinDeg4Triangulation"
    HABO_DENSE = "HaboDense"
    TERMINAL_PATTERN = "TerminalPattern"
    DENSE_TRIANGULATION = "DenseTriangulation"


@dataclass(frozen=True)
class GenConfig:
    n: int
    seed: int
    mode: Mode
    x: Optional[int] = None
    y: Optional[int] = None


def _side_chords(n: int, rng: random.Random, p_end: float) -> set[tuple[int, int]]:
    """Random triangulation of the polygon 0..n-1 by recursive apex choice.

    With probability ``p_end`` the apex sits next to an end of the current
    edge, which gives path-like duals with few ears.
    """
    chords: set[tuple[int, int]] = set()
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        w = rng.choice((i + 1, j - 1)) if rng.random() < p_end else rng.randint(i + 1, j - 1)
        if w - i > 1:
            chords.add((i, w))
        if j - w > 1:
            chords.add((w, j))
        stack.extend(((i, w), (w, j)))
    return chords


def _min_degree(n: int, inner, outer) -> int:
    deg = [2] * n
    for u, v in (*inner, *outer):
        deg[u] += 1
        deg[v] += 1
    return min(deg)


def _complete_side(n: int, ears: set[int], rng: random.Random, p_end: float) -> set:
    """Side chords containing the 2-chord over every vertex in ``ears``."""
    rest = [v for v in range(n) if v not in ears]
    chords = {tuple(sorted(((e - 1) % n, (e + 1) % n))) for e in ears}
    chords.update(tuple(sorted((rest[i], rest[j])))
                  for i, j in _side_chords(len(rest), rng, p_end))
    return chords


def _gen_dense_triangulation(cfg: GenConfig, rng: random.Random) -> ChordedCycle:
    n = cfg.n
    if n < 6:
        raise Infeasible(f"no {cfg.mode.value} instance with n={n}")
    for _ in range(REJECTION_CAP):
        k = gen_habo(GenConfig(n, rng.getrandbits(64), Mode.HABO_DENSE))
        ears: tuple[set[int], set[int]] = (set(), set())
        for seg in k.segments.segments:
            side = rng.randrange(2)
            # the two hats of a B cross, so they go to opposite sides
            for j, h in enumerate(SEGMENT_HATS[seg.kind]):
                ears[side ^ j].add((seg.start + h) % n)
        p_end = rng.random()
        inner = _complete_side(n, ears[0], rng, p_end)
        outer = _complete_side(n, ears[1], rng, p_end)
        if inner & outer or _min_degree(n, inner, outer) < 4:
            continue
        cc = ChordedCycle(n, frozenset(inner), frozenset(outer))
        assert validate(cc, require_min_degree_4=True).overall
        return cc
    raise FeasibilityTimeout(f"no {cfg.mode.value} instance with n={n} after "
                             f"{REJECTION_CAP} attempts", REJECTION_CAP)


def gen_triangulation(cfg: GenConfig) -> ChordedCycle:
    """A seeded Hamiltonian plane triangulation with the cycle ``0, 1, ..., n-1``.

    ``DenseTriangulation`` starts both sides from the 2-chords of a dense
    (H,A,B,O)-graph, so most instances have many 2-vertices.
    """
    if cfg.mode is Mode.DENSE_TRIANGULATION:
        return _gen_dense_triangulation(cfg, random.Random(cfg.seed))
    if cfg.mode not in (Mode.RANDOM_TRIANGULATION, Mode.MIN_DEG4_TRIANGULATION):
        raise Infeasible(f"mode {cfg.mode.value} does not generate triangulations")
    min_deg4 = cfg.mode is Mode.MIN_DEG4_TRIANGULATION
    n = cfg.n
    if n < (6 if min_deg4 else 4):
        raise Infeasible(f"no {cfg.mode.value} instance with n={n}")
    rng = random.Random(cfg.seed)
    for _ in range(REJECTION_CAP):
        p_end = rng.uniform(0.5, 1.0) if min_deg4 else rng.random()
        inner = _side_chords(n, rng, p_end)
        outer = _side_chords(n, rng, p_end)
        if inner & outer or (min_deg4 and _min_degree(n, inner, outer) < 4):
            continue
        cc = ChordedCycle(n, frozenset(inner), frozenset(outer))
        assert validate(cc, require_min_degree_4=min_deg4).overall
        return cc
    raise FeasibilityTimeout(f"no {cfg.mode.value} instance with n={n} after "
                             f"{REJECTION_CAP} attempts", REJECTION_CAP)


def max_hats(n: int) -> int:
    """Most hats any A/B/O tiling of an n-cycle can carry."""
    return max(2 * b + (n - 3 * b) // 2 for b in range(n // 3 + 1))


def _terminal_parts(cfg: GenConfig, rng: random.Random) -> tuple[int, int]:
    if cfg.x is not None and cfg.y is not None:
        return cfg.x, cfg.y
    options = [(x, y) for y in range(1, cfg.n // 11 + 1)
               for x in range(y, cfg.n // 8 + 1) if 8 * x + 3 * y == cfg.n]
    if not options:
        raise Infeasible(f"n={cfg.n} is not 8x+3y with x >= y >= 1")
    return rng.choice(options)


def gen_habo(cfg: GenConfig) -> HaboGraph:
    rng = random.Random(cfg.seed)
    if cfg.mode is Mode.TERMINAL_PATTERN:
        x, y = _terminal_parts(cfg, rng)
        if not x >= y >= 1:
            raise Infeasible(f"terminal pattern needs x >= y >= 1, got x={x}, y={y}")
        cuts = sorted(rng.sample(range(1, x), y - 1))
        blocks = [b - a for a, b in zip([0] + cuts, cuts + [x])]
        return HaboGraph.from_kinds("".join("ABB" * b + "AO" for b in blocks))
    if cfg.mode is not Mode.HABO_DENSE:
        raise Infeasible(f"mode {cfg.mode.value} does not generate (H,A,B,O)-graphs")
    n = cfg.n
    if n < 5 or max_hats(n) < ceil_half_plus(n):
        raise Infeasible(f"no dense (H,A,B,O)-graph with n={n}")
    for _ in range(REJECTION_CAP):
        p_o = rng.uniform(0.0, 0.3)
        p_b = rng.uniform(0.3, 0.9)
        kinds, total = [], 0
        while total < n:
            r = rng.random()
            c = "O" if r < p_o else "B" if r < p_o + (1 - p_o) * p_b else "A"
            if total + SEGMENT_EDGES[c] > n:
                c = "A" if total + 2 <= n else "O"
            kinds.append(c)
            total += SEGMENT_EDGES[c]
        hats = sum(len(SEGMENT_HATS[c]) for c in kinds)
        if hats >= ceil_half_plus(n):
            return HaboGraph.from_kinds("".join(kinds), rng.randrange(n))
    raise FeasibilityTimeout(f"no dense tiling for n={n} after {REJECTION_CAP} attempts",
                             REJECTION_CAP)
