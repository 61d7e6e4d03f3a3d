"""Hamiltonian plane triangulations as a cycle plus two chord systems.

Vertices of a :class:`ChordedCycle` are the positions ``0..n-1`` of the Hamilton
cycle.  Every non-cycle edge is a chord drawn either inside (``Side.INNER``) or
outside (``Side.OUTER``) the cycle; a plane triangulation is exactly a cycle
whose two sides are each triangulated by ``n - 3`` pairwise non-crossing chords.
"""

from __future__ import annotations

import enum
import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    BudgetExhausted,
    DuplicateEdge,
    InvalidInput,
    MalformedLine,
    NotHamiltonCycle,
    NotPlanarWithThisCycle,
    SelfLoop,
    VertexOutOfRange,
)

Pair = tuple[int, int]


class Side(enum.Enum):
    INNER = "Inner"
    OUTER = "Outer"

    @property
    def other(self) -> "Side":
        return Side.OUTER if self is Side.INNER else Side.INNER


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u <= v else (v, u)


def crosses(c1: Pair, c2: Pair) -> bool:
    """True iff two chords of one polygon cross (shared endpoints never cross)."""
    a, b = sorted(c1)
    c, d = sorted(c2)
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b < d) or (c < a < d < b)


def span(n: int, u: int, v: int) -> int:
    d = abs(u - v) % n
    return min(d, n - d)


@dataclass(frozen=True)
class RawGraph:
    vertex_count: int
    edges: tuple[Pair, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted({_pair(u, v) for u, v in self.edges})))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


@dataclass(frozen=True)
class ChordedCycle:
    n: int
    inner: frozenset = field(default_factory=frozenset)
    outer: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "inner", frozenset(_pair(*c) for c in self.inner))
        object.__setattr__(self, "outer", frozenset(_pair(*c) for c in self.outer))

    def chords(self, side: Side) -> frozenset:
        return self.inner if side is Side.INNER else self.outer

    def cycle_edges(self) -> list[Pair]:
        return [_pair(i, (i + 1) % self.n) for i in range(self.n)]

    def edges(self) -> list[Pair]:
        return sorted(set(self.cycle_edges()) | self.inner | self.outer)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges():
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def side_adjacency(self, side: Side) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in set(self.cycle_edges()) | self.chords(side):
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def to_raw(self) -> RawGraph:
        return RawGraph(self.n, tuple(self.edges()))

    def digest(self) -> str:
        return graph_digest(self.n, self.edges())

    def to_text(self) -> str:
        inner = " ".join(f"{u} {v}" for u, v in sorted(self.inner))
        outer = " ".join(f"{u} {v}" for u, v in sorted(self.outer))
        return f"{self.n}\nI {inner}".rstrip() + f"\nO {outer}".rstrip() + "\n"


def graph_digest(n: int, edges: Iterable[Pair]) -> str:
    payload = f"{n}:" + ";".join(f"{u},{v}" for u, v in sorted(_pair(*e) for e in edges))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# --------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def validate(cc: ChordedCycle, require_min_degree_4: bool = False,
             require_triangulated: bool = True) -> ValidationReport:
    """Check every structural invariant of ``cc``; failures become report entries."""
    n = cc.n
    checks = [Check("cycle-length", n >= 3, f"n={n}")]
    bad_form = []
    for side in Side:
        for u, v in sorted(cc.chords(side)):
            if not (0 <= u < n and 0 <= v < n) or span(n, u, v) < 2:
                bad_form.append(f"{side.value}({u},{v})")
    checks.append(Check("chord-form", not bad_form, ", ".join(bad_form)))
    for side in Side:
        chords = sorted(cc.chords(side))
        hits = [
            f"({a},{b})x({c},{d})"
            for i, (a, b) in enumerate(chords)
            for (c, d) in chords[i + 1:]
            if crosses((a, b), (c, d))
        ]
        checks.append(Check(f"{side.value.lower()}-non-crossing", not hits, ", ".join(hits[:5])))
    shared = sorted(cc.inner & cc.outer)
    checks.append(Check("sides-disjoint", not shared, ", ".join(map(str, shared))))
    if require_triangulated:
        for side in Side:
            k = len(cc.chords(side))
            checks.append(Check(f"{side.value.lower()}-triangulated", k == n - 3,
                                f"{k} chords, expected {n - 3}"))
    if require_min_degree_4 and not bad_form:
        low = [v for v in range(n) if degree(cc, v) < 4]
        checks.append(Check("min-degree-4", not low, f"low-degree vertices {low}" if low else ""))
    return ValidationReport(tuple(checks))


def is_valid_triangulation(cc: ChordedCycle, require_min_degree_4: bool = True) -> bool:
    return validate(cc, require_min_degree_4=require_min_degree_4).overall


# --------------------------------------------------------------------------
# Degree queries


def _check_vertex(cc: ChordedCycle, v: int) -> None:
    if not 0 <= v < cc.n:
        raise InvalidInput(f"vertex {v} out of range for n={cc.n}")


def side_degree(cc: ChordedCycle, v: int, side: Side) -> int:
    _check_vertex(cc, v)
    return 2 + sum(1 for c in cc.chords(side) if v in c)


def degree(cc: ChordedCycle, v: int) -> int:
    _check_vertex(cc, v)
    return 2 + sum(1 for c in cc.inner | cc.outer if v in c)


def two_vertices(cc: ChordedCycle) -> list[tuple[int, Side]]:
    """Vertices whose degree on some side is 2, tagged by that side."""
    out = []
    for v in range(cc.n):
        for side in (Side.INNER, Side.OUTER):
            if side_degree(cc, v, side) == 2:
                out.append((v, side))
    return out


def two_chords(cc: ChordedCycle, side: Side) -> list[Pair]:
    return sorted(c for c in cc.chords(side) if span(cc.n, *c) == 2)


def chord_counts(cc: ChordedCycle) -> tuple[int, int]:
    return len(two_chords(cc, Side.INNER)), len(two_chords(cc, Side.OUTER))


def has_universal_vertex(cc: ChordedCycle) -> Optional[int]:
    for v, nbrs in enumerate(cc.adjacency()):
        if len(nbrs) == cc.n - 1:
            return v
    return None


# --------------------------------------------------------------------------
# Text formats


def content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_edge_list(text: str) -> RawGraph:
    lines = list(content_lines(text))
    if not lines:
        raise MalformedLine("missing vertex count", 1)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLine(f"expected vertex count, got {head!r}", lineno) from None
    if n < 1:
        raise MalformedLine(f"vertex count must be positive, got {n}", lineno)
    seen: set[Pair] = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        try:
            u, v = (int(p) for p in parts)
        except ValueError:
            raise MalformedLine(f"expected 'u v', got {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u},{v}) outside [0,{n})", lineno)
        if u == v:
            raise SelfLoop(f"self-loop at {u}", lineno)
        e = _pair(u, v)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}", lineno)
        seen.add(e)
    return RawGraph(n, tuple(seen))


def format_edge_list(g: RawGraph) -> str:
    return f"{g.vertex_count}\n" + "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_chorded(text: str) -> ChordedCycle:
    lines = list(content_lines(text))
    if not lines:
        raise MalformedLine("missing cycle length", 1)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLine(f"expected cycle length, got {head!r}", lineno) from None
    sides: dict[str, list[Pair]] = {"I": [], "O": []}
    for lineno, line in lines[1:]:
        tag, *rest = line.split()
        if tag not in sides:
            raise MalformedLine(f"expected 'I' or 'O' line, got {tag!r}", lineno)
        try:
            nums = [int(x) for x in rest]
        except ValueError:
            raise MalformedLine("non-integer chord endpoint", lineno) from None
        if len(nums) % 2:
            raise MalformedLine("odd number of chord endpoints", lineno)
        for u, v in zip(nums[::2], nums[1::2]):
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"chord ({u},{v}) outside [0,{n})", lineno)
            if u == v:
                raise SelfLoop(f"chord ({u},{v})", lineno)
            if _pair(u, v) in sides[tag]:
                raise DuplicateEdge(f"duplicate chord ({u},{v})", lineno)
            sides[tag].append(_pair(u, v))
    return ChordedCycle(n, frozenset(sides["I"]), frozenset(sides["O"]))


# --------------------------------------------------------------------------
# Hamilton cycles and the inner/outer split


def find_hamilton_cycle(g: RawGraph, budget: int = 1_000_000) -> Optional[list[int]]:
    """Budgeted backtracking search for a Hamilton cycle.

    Returns the cycle as a vertex sequence, or ``None`` when the complete search
    proves there is none.  Raises :class:`BudgetExhausted` once ``budget`` node
    expansions have been spent without a decision.
    """
    n = g.vertex_count
    adj = g.adjacency()
    if n < 3 or any(len(a) < 2 for a in adj):
        return None
    order = {v: (len(adj[v]), v) for v in range(n)}
    start = min(range(n), key=order.__getitem__)
    path = [start]
    on_path = [False] * n
    on_path[start] = True
    expansions = 0

    def feasible(end: int) -> bool:
        for v in range(n):
            if on_path[v]:
                continue
            free = sum(1 for w in adj[v] if not on_path[w] or w == end or w == start)
            if free < 2:
                return False
        return True

    def extend(end: int) -> bool:
        nonlocal expansions
        expansions += 1
        if expansions > budget:
            raise BudgetExhausted(f"no decision within {budget} node expansions")
        if len(path) == n:
            return start in adj[end]
        for w in sorted((w for w in adj[end] if not on_path[w]), key=order.__getitem__):
            path.append(w)
            on_path[w] = True
            if feasible(w) and extend(w):
                return True
            on_path[w] = False
            path.pop()
        return False

    return list(path) if extend(start) else None


def split_chords(g: RawGraph, cycle: Sequence[int]) -> ChordedCycle:
    """Relabel ``g`` by position along ``cycle`` and 2-colour its chords into sides.

    Two chords conflict when they cross; each connected component of the
    conflict graph is coloured by BFS starting from its lexicographically
    smallest chord, which goes inside.
    """
    n = g.vertex_count
    if sorted(cycle) != list(range(n)):
        raise NotHamiltonCycle("cycle must visit every vertex exactly once")
    pos = {v: i for i, v in enumerate(cycle)}
    edges = {_pair(pos[u], pos[v]) for u, v in g.edges}
    cyc = {_pair(i, (i + 1) % n) for i in range(n)}
    if not cyc <= edges:
        missing = sorted(cyc - edges)[0]
        raise NotHamiltonCycle(f"cycle uses non-edge ({cycle[missing[0]]},{cycle[missing[1]]})")
    chords = sorted(edges - cyc)
    conflicts: dict[Pair, list[Pair]] = {c: [] for c in chords}
    for i, c in enumerate(chords):
        for d in chords[i + 1:]:
            if crosses(c, d):
                conflicts[c].append(d)
                conflicts[d].append(c)
    colour: dict[Pair, int] = {}
    for root in chords:
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            c = queue.popleft()
            for d in conflicts[c]:
                if d not in colour:
                    colour[d] = 1 - colour[c]
                    queue.append(d)
                elif colour[d] == colour[c]:
                    raise NotPlanarWithThisCycle(
                        f"chords {c} and {d} cross but are forced onto the same side")
    inner = frozenset(c for c in chords if colour[c] == 0)
    outer = frozenset(c for c in chords if colour[c] == 1)
    return ChordedCycle(n, inner, outer)


# --------------------------------------------------------------------------
# Dominating sets


@dataclass(frozen=True)
class DominatingSet:
    """A vertex set checked against a concrete graph when it is built."""

    vertices: frozenset
    certified_against: str

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[int]:
        return sorted(self.vertices)

    @classmethod
    def certify(cls, vertices: Iterable[int], adjacency: Sequence[Iterable[int]],
                digest: str) -> "DominatingSet":
        vs = frozenset(vertices)
        missing = undominated(vs, adjacency)
        if missing:
            raise ValueError(f"set {sorted(vs)} leaves {missing[:8]} undominated")
        return cls(vs, digest)


def undominated(vertices: Iterable[int], adjacency: Sequence[Iterable[int]]) -> list[int]:
    vs = set(vertices)
    n = len(adjacency)
    bad = [v for v in vs if not 0 <= v < n]
    if bad:
        raise InvalidInput(f"vertex ids {sorted(bad)} out of range for n={n}")
    covered = set(vs)
    for v in vs:
        covered.update(adjacency[v])
    return [v for v in range(n) if v not in covered]
