"""Rewire a Hamilton cycle until no three consecutive vertices are 2-vertices.

Each step exchanges the order of a few vertices along the cycle, keeping the
abstract graph fixed; the chords are then re-split between the two sides of
the new cycle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import NormalizationStalled, NotPlanarWithThisCycle, UniversalVertex
from .graph_core import ChordedCycle, Side, has_universal_vertex, side_degree, split_chords


@dataclass(frozen=True)
class NormalizationStep:
    """One rewire.  Paths are given in vertex labels of the cycle being rewired."""

    case_tag: str
    k: Optional[int]
    window: tuple[int, ...]
    replaced_path: tuple[int, ...]
    new_path: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"case": self.case_tag, "k": self.k, "window": list(self.window),
                "replaced_path": list(self.replaced_path), "new_path": list(self.new_path)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Normalized(NamedTuple):
    cc: ChordedCycle
    steps: list[NormalizationStep]
    origin: tuple[int, ...]
    """``origin[i]`` is the input position now sitting at position ``i``."""


def _is_two(cc: ChordedCycle, v: int) -> Optional[Side]:
    for side in (Side.INNER, Side.OUTER):
        if side_degree(cc, v, side) == 2:
            return side
    return None


def find_violation(cc: ChordedCycle) -> Optional[tuple[int, int]]:
    """Leftmost maximal run of at least three 2-vertices, as ``(start, length)``."""
    n = cc.n
    flags = [_is_two(cc, v) is not None for v in range(n)]
    if all(flags):
        return 0, n
    best = None
    for v in range(n):
        if not flags[v] or flags[(v - 1) % n]:
            continue
        length = 1
        while flags[(v + length) % n]:
            length += 1
        if length >= 3 and (best is None or v < best[0]):
            best = (v, length)
    return best


def rewire_step(cc: ChordedCycle, violation: tuple[int, int]
                ) -> tuple[ChordedCycle, NormalizationStep, list[int]]:
    """Apply one rewire; also returns the new cycle as a list of old positions."""
    n = cc.n
    start, length = violation
    seq = list(range(n))
    at = [(start + i) % n for i in range(-1, n - 1)]  # at[0] = predecessor of the run

    if length >= 4:
        a, w, x, y, z, b = at[:6]
        old, new = (a, w, x, y, z, b), (a, w, y, x, z, b)
        tag, k = "FourRun", None
    else:
        a, x, y, z, b = at[:5]
        side = _is_two(cc, x)
        if side is None or side_degree(cc, z, side) != 2:
            raise NotPlanarWithThisCycle(f"run at {start} does not alternate sides")
        if side_degree(cc, b, side) > 3:
            old, new = (a, x, y, z, b), (a, x, z, y, b)
            tag, k = "ThreeRunRichB", None
        else:
            adj = cc.adjacency()
            tail = at[4:]  # b = c_0, c_1, ... up to a's predecessor
            m = 0
            while m + 1 < len(tail) and tail[m + 1] in adj[y]:
                m += 1
            if m + 1 >= len(tail) and a in adj[y]:
                raise UniversalVertex(y)
            if m == 0:
                raise NotPlanarWithThisCycle(f"vertex {y} is not adjacent to {tail[1]}")
            cs = tail[:m + 1]
            old = (a, x, y, z, *cs)
            new = (a, x, z, *cs[:-1], y, cs[-1])
            tag, k = "ThreeRunPoorB", m - 1

    window = old
    idx = [(start - 1 + i) % n for i in range(len(old))]
    for i, v in zip(idx, new):
        seq[i] = v
    new_cc = split_chords(cc.to_raw(), seq)
    step = NormalizationStep(tag, k, tuple(window), tuple(old), tuple(new))
    return new_cc, step, seq


def normalize(cc: ChordedCycle, max_steps: Optional[int] = None) -> Normalized:
    """Rewire until :func:`find_violation` finds nothing (at most ``n**2`` steps)."""
    u = has_universal_vertex(cc)
    if u is not None:
        raise UniversalVertex(u)
    cap = cc.n * cc.n if max_steps is None else max_steps
    origin = list(range(cc.n))
    steps: list[NormalizationStep] = []
    cur = cc
    while True:
        violation = find_violation(cur)
        if violation is None:
            return Normalized(cur, steps, tuple(origin))
        if len(steps) >= cap:
            raise NormalizationStalled(f"still violated at {violation} after {len(steps)} steps")
        cur, step, seq = rewire_step(cur, violation)
        origin = [origin[v] for v in seq]
        steps.append(step)


def steps_to_jsonl(steps: list[NormalizationStep]) -> str:
    return "".join(s.to_json() + "\n" for s in steps)
