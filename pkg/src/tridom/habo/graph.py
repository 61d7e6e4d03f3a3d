"""(H,A,B,O)-graphs in hat encoding.

A *hat* at cycle position ``p`` stands for the 2-chord ``(p-1, p+1)``.  With
maximal hat runs of length at most two, the cycle tiles uniquely into
segments: a single hat is an ``A`` (three vertices, two cycle edges), a pair
of adjacent hats is a ``B`` (four vertices, three cycle edges), and every
remaining cycle edge is an ``O``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ..errors import InvalidInput, MalformedLine, RunTooLong
from ..graph_core import content_lines, graph_digest

SEGMENT_EDGES = {"A": 2, "B": 3, "O": 1}
SEGMENT_HATS = {"A": (1,), "B": (1, 2), "O": ()}


def ceil_half_plus(n: int) -> int:
    """Smallest chord count meeting the density hypothesis, ``ceil((n+1)/2)``."""
    return (n + 2) // 2


@dataclass(frozen=True)
class Segment:
    kind: str
    start: int

    @property
    def edges(self) -> int:
        return SEGMENT_EDGES[self.kind]

    def vertices(self, n: int) -> list[int]:
        return [(self.start + i) % n for i in range(self.edges + 1)]


@dataclass(frozen=True)
class SegmentString:
    """The cyclic tiling of a hat set, plus the string statistics the solver uses."""

    n: int
    segments: tuple[Segment, ...]

    @cached_property
    def kinds(self) -> str:
        return "".join(s.kind for s in self.segments)

    @property
    def x1(self) -> int:
        return self.kinds.count("A")

    @property
    def x2(self) -> int:
        return self.kinds.count("B")

    @cached_property
    def strings(self) -> list[list[int]]:
        """Maximal cyclic runs of A/B segments, as lists of segment indices."""
        k = len(self.segments)
        kinds = self.kinds
        if "O" not in kinds:
            return [list(range(k))] if k else []
        first_o = kinds.index("O")
        out: list[list[int]] = []
        cur: list[int] = []
        for step in range(1, k + 1):
            i = (first_o + step) % k
            if kinds[i] == "O":
                if cur:
                    out.append(cur)
                cur = []
            else:
                cur.append(i)
        return out

    @property
    def cyclic(self) -> bool:
        """True when a single string wraps the whole cycle (no O at all)."""
        return bool(self.segments) and "O" not in self.kinds

    def string_kinds(self) -> list[str]:
        return ["".join(self.kinds[i] for i in s) for s in self.strings]

    @property
    def y(self) -> int:
        return sum(1 for s in self.string_kinds() if "A" in s and "B" in s)

    def is_isolated_a(self, i: int) -> bool:
        k = len(self.segments)
        return (self.kinds[i] == "A" and self.kinds[(i - 1) % k] == "O"
                and self.kinds[(i + 1) % k] == "O")

    def window_size(self, i: int, count: int) -> int:
        """Vertices covered by ``count`` consecutive segments starting at index ``i``."""
        k = len(self.segments)
        return 1 + sum(self.segments[(i + j) % k].edges for j in range(count))

    def find(self, pattern: str) -> list[int]:
        """Segment indices where ``pattern`` matches, cyclically, without self-overlap."""
        k = len(self.segments)
        if not pattern or len(pattern) > k:
            return []
        kinds = self.kinds
        hits = []
        for i in range(k):
            if all(kinds[(i + j) % k] == c for j, c in enumerate(pattern)):
                if self.window_size(i, len(pattern)) < self.n:
                    hits.append(i)
        return hits


def parse_segments(n: int, hats: Iterable[int]) -> SegmentString:
    hats = set(hats)
    if len(hats) == n and n:
        raise RunTooLong(f"every position is a hat (n={n})")
    covered = [False] * n
    segments = []
    for p in sorted(hats):
        if (p - 1) % n in hats:
            continue
        run = 1
        while (p + run) % n in hats:
            run += 1
        if run > 2:
            raise RunTooLong(f"hat run of length {run} starting at {p}")
        start = (p - 1) % n
        kind = "A" if run == 1 else "B"
        segments.append(Segment(kind, start))
        for e in range(SEGMENT_EDGES[kind]):
            covered[(start + e) % n] = True
    segments.extend(Segment("O", q) for q in range(n) if not covered[q])
    segments.sort(key=lambda s: s.start)
    return SegmentString(n, tuple(segments))


@dataclass(frozen=True)
class HaboGraph:
    n: int
    hats: frozenset

    def __post_init__(self):
        object.__setattr__(self, "hats", frozenset(self.hats))
        if self.n < 5:
            raise InvalidInput(f"an (H,A,B,O)-graph needs n >= 5, got {self.n}")
        bad = [p for p in self.hats if not 0 <= p < self.n]
        if bad:
            raise InvalidInput(f"hat positions {sorted(bad)} out of range")
        _ = self.segments

    @classmethod
    def from_kinds(cls, kinds: str, offset: int = 0) -> "HaboGraph":
        """Build from a cyclic segment word such as ``"ABBAO"``, first segment at ``offset``."""
        n = sum(SEGMENT_EDGES[c] for c in kinds)
        hats, pos = set(), 0
        for c in kinds:
            hats.update((offset + pos + h) % n for h in SEGMENT_HATS[c])
            pos += SEGMENT_EDGES[c]
        return cls(n, frozenset(hats))

    @cached_property
    def segments(self) -> SegmentString:
        return parse_segments(self.n, self.hats)

    @property
    def t(self) -> int:
        return len(self.hats)

    @property
    def dense(self) -> bool:
        return self.t >= ceil_half_plus(self.n)

    def chords(self) -> list[tuple[int, int]]:
        n = self.n
        return sorted(tuple(sorted(((p - 1) % n, (p + 1) % n))) for p in self.hats)

    def edges(self) -> list[tuple[int, int]]:
        n = self.n
        cyc = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
        return sorted(cyc | set(self.chords()))

    def adjacency(self) -> list[set[int]]:
        n = self.n
        adj = [{(v - 1) % n, (v + 1) % n} for v in range(n)]
        for a, b in self.chords():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def digest(self) -> str:
        return graph_digest(self.n, self.edges())

    def to_text(self) -> str:
        return f"{self.n}\nH " + " ".join(map(str, sorted(self.hats))) + "\n"


def parse_habo(text: str) -> HaboGraph:
    lines = list(content_lines(text))
    if len(lines) < 1:
        raise MalformedLine("missing cycle length", 1)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLine(f"expected cycle length, got {head!r}", lineno) from None
    hats: list[int] = []
    for lineno, line in lines[1:]:
        tag, *rest = line.split()
        if tag != "H":
            raise MalformedLine(f"expected 'H' line, got {tag!r}", lineno)
        try:
            hats.extend(int(x) for x in rest)
        except ValueError:
            raise MalformedLine("non-integer hat position", lineno) from None
    return HaboGraph(n, frozenset(hats))
