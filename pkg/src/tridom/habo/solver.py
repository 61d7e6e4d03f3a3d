"""Solver driver for dense (H,A,B,O)-graphs.

``solve_habo`` shrinks the graph with the rules of :mod:`tridom.habo.rules`
until either ``n <= 20`` (closed-form base case) or no rule applies (exact
dynamic programme), then lifts the small solution back frame by frame.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from ..errors import BoundViolated, InvalidInput, NotNormalized, RunTooLong, StructureInvalid
from ..graph_core import ChordedCycle, DominatingSet, Side, undominated
from .graph import HaboGraph, ceil_half_plus
from .rules import LiftFrame, Rule, apply_rule, case_table, frame_state, get_rule, lift

BASE_CASE_MAX_N = 20


def ceil_2n_7(n: int) -> int:
    return -(-2 * n // 7)


def extract_habo(cc: ChordedCycle) -> HaboGraph:
    """All 2-chords of ``cc``, on either side, as one hat set."""
    n = cc.n
    chords = set(cc.chords(Side.INNER)) | set(cc.chords(Side.OUTER))
    hats = set()
    for p in range(n):
        a, b = (p - 1) % n, (p + 1) % n
        if (min(a, b), max(a, b)) in chords:
            hats.add(p)
    try:
        return HaboGraph(n, frozenset(hats))
    except RunTooLong as exc:
        raise NotNormalized(str(exc)) from None


# --------------------------------------------------------------------------
# Rule selection

Choice = tuple[Rule, int]


def _matches(k: HaboGraph, rule: Rule) -> list[tuple[int, Rule]]:
    segs = k.segments
    out = []
    for r in (rule, rule.mirror()):
        if r.mirrored and r.pattern == rule.pattern:
            continue
        for i in segs.find(r.pattern):
            out.append((segs.segments[i].start, r))
    out.sort(key=lambda pr: (pr[0], pr[1].mirrored))
    return out


def _keeps_density(k: HaboGraph, rule: Rule) -> bool:
    dn, dt = rule.delta()
    return k.t + dt >= ceil_half_plus(k.n + dn)


def _first(k: HaboGraph, name: str) -> Optional[Choice]:
    rule = get_rule(name)
    if k.n < rule.min_n or not _keeps_density(k, rule):
        return None
    for pos, r in _matches(k, rule):
        return r, pos
    return None


def _switch_toward_r3(k: HaboGraph) -> Optional[Choice]:
    segs = k.segments
    s = len(segs.segments)
    direct = [(i, get_rule("Switch")) for i in segs.find("OOOAB")]
    direct += [((i + 1) % s, get_rule("Switch", True)) for i in segs.find("BAOOO")]
    if direct:
        i, rule = min(direct, key=lambda d: (segs.segments[d[0]].start, d[1].mirrored))
        return rule, segs.segments[i].start
    return _hop(k)


def _hop(k: HaboGraph) -> Optional[Choice]:
    """Move three Os one isolated A closer to a mixed string.

    Each hop strictly shortens the distance (in isolated As) from some run of
    at least three Os to a mixed string, so repeated hops end at ``OOOAB`` or
    its mirror.
    """
    segs = k.segments
    kinds = segs.kinds
    s = len(kinds)
    mixed = {i for st in segs.strings if len(st) > 1 for i in st}
    if not mixed or "OOO" not in kinds + kinds[:2]:
        return None
    candidates = []
    for i in range(s):
        # OOO just before segment i, carried rightwards
        if all(kinds[(i - j) % s] == "O" for j in (1, 2, 3)):
            d = _distance(segs, mixed, i, +1)
            if d is not None:
                candidates.append((d, 0, segs.segments[(i - 3) % s].start))
        # OOO just after segment i, carried leftwards
        if all(kinds[(i + j) % s] == "O" for j in (1, 2, 3)):
            d = _distance(segs, mixed, i, -1)
            if d is not None:
                candidates.append((d, 1, segs.segments[i].start))
    if not candidates:
        return None
    _, mirrored, pos = min(candidates)
    rule = get_rule("Switch", bool(mirrored))
    starts = {seg.start: j for j, seg in enumerate(segs.segments)}
    if starts[pos] not in segs.find(rule.pattern):
        return None
    return rule, pos


def _distance(segs, mixed, i: int, step: int) -> Optional[int]:
    """Isolated As crossed walking from segment ``i`` before reaching a mixed string."""
    kinds = segs.kinds
    s = len(kinds)
    if kinds[i] != "A" or not segs.is_isolated_a(i):
        return None
    count = 0
    j = i
    for _ in range(s):
        if j in mixed:
            return count
        if kinds[j] == "A":
            if not segs.is_isolated_a(j):
                return None
            count += 1
        elif kinds[j] == "B":
            return None
        j = (j + step) % s
    return None


def select_rule(k: HaboGraph) -> Optional[Choice]:
    """The next rewrite to apply, or ``None`` when ``k`` is terminal."""
    segs = k.segments
    if k.dense and all(len(st) == 1 and segs.kinds[st[0]] == "A" for st in segs.strings):
        raise StructureInvalid("dense graph without an (A,B)-string")
    for name in ("R3", "R2", "R1"):
        choice = _first(k, name)
        if choice:
            return choice
    if k.n >= get_rule("Switch").min_n:
        choice = _switch_toward_r3(k)
        if choice:
            return choice
    for name in ("R4", "R5", "R6"):
        choice = _first(k, name)
        if choice:
            return choice
    if segs.x2 >= 6:
        return _first(k, "R7")
    return None


# --------------------------------------------------------------------------
# Base case and terminal DP


def base_case_dominate(k: HaboGraph) -> DominatingSet:
    """``{v}`` plus every third vertex of the arc ``v`` leaves undominated."""
    n = k.n
    v = next((u for u in range(n) if (u - 1) % n in k.hats and (u + 1) % n in k.hats), None)
    if v is None:
        raise StructureInvalid("no two 2-chords share an end vertex")
    m = n - 5
    arc = [(v + 3 + i) % n for i in range(m)]
    picks = {arc[i] for i in range(1, m, 3)}
    if m % 3 == 1:
        picks.add(arc[-1])
    return DominatingSet.certify({v} | picks, k.adjacency(), k.digest())


def _brute_gamma(adj: list[set[int]]) -> set[int]:
    n = len(adj)
    nb = [sum(1 << u for u in adj[v] | {v}) for v in range(n)]
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            cov = 0
            for v in combo:
                cov |= nb[v]
            if cov == full:
                return set(combo)
    return set(range(n))


def banded_min_dominating(k: HaboGraph) -> set[int]:
    """Exact minimum dominating set; every edge of ``k`` spans at most two positions."""
    n = k.n
    adj = k.adjacency()
    if n < 9:
        return _brute_gamma(adj)

    def ok(u: int, bits: dict[int, int]) -> bool:
        return any(bits[w] for w in adj[u] | {u})

    best_cost, best_set = None, None
    for prefix in product((0, 1), repeat=4):
        # each layer maps the bits of the last four vertices to (cost, parent)
        layers = [{prefix: (sum(prefix), None)}]
        for v in range(4, n):
            cur = {}
            for state, (cost, _) in layers[-1].items():
                for b in (0, 1):
                    bits = {v - 4 + j: state[j] for j in range(4)}
                    bits[v] = b
                    if not ok(v - 2, bits):
                        continue
                    nxt = state[1:] + (b,)
                    c = cost + b
                    if nxt not in cur or c < cur[nxt][0]:
                        cur[nxt] = (c, state)
            layers.append(cur)
        for state, (cost, _) in layers[-1].items():
            bits = {n - 4 + j: state[j] for j in range(4)}
            bits.update({j: prefix[j] for j in range(4)})
            if all(ok(u, bits) for u in (n - 2, n - 1, 0, 1)):
                if best_cost is None or cost < best_cost:
                    best_cost, best_set = cost, (prefix, state, layers)
    if best_set is None:  # pragma: no cover - all-ones always works
        raise StructureInvalid("banded DP found no dominating set")
    prefix, state, layers = best_set
    chosen = {j for j in range(4) if prefix[j]}
    v = n - 1
    for layer in reversed(layers[1:]):
        if state[3]:
            chosen.add(v)
        state = layer[state][1]
        v -= 1
    return chosen


def terminal_pattern(k: HaboGraph) -> Optional[tuple[int, int]]:
    """``(x, y)`` when ``k`` is strings ``(ABB)^j A`` joined by single Os, else ``None``."""
    kinds = k.segments.kinds
    if "O" not in kinds or "OO" in kinds + kinds[0]:
        return None
    x = y = 0
    for word in k.segments.string_kinds():
        if len(word) < 4 or len(word) % 3 != 1 or word != "ABB" * (len(word) // 3) + "A":
            return None
        x += len(word) // 3
        y += 1
    return x, y


def terminal_dominate(k: HaboGraph) -> DominatingSet:
    d = DominatingSet.certify(banded_min_dominating(k), k.adjacency(), k.digest())
    pattern = terminal_pattern(k)
    if pattern is not None and d.size > 2 * pattern[0] + pattern[1]:
        raise BoundViolated(f"terminal set of size {d.size} exceeds 2x+y={2 * pattern[0] + pattern[1]}")
    if d.size > ceil_2n_7(k.n):
        raise BoundViolated(f"terminal set of size {d.size} exceeds ceil(2n/7)={ceil_2n_7(k.n)}")
    return d


# --------------------------------------------------------------------------
# Driver


@dataclass
class ReductionTrace:
    frames: list[LiftFrame] = field(default_factory=list)
    finish: str = ""
    cases: list[dict] = field(default_factory=list)

    def __len__(self):
        return len(self.frames)

    def rule_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for f in self.frames:
            out[f.rule.name] = out.get(f.rule.name, 0) + 1
        return out

    def records(self) -> list[dict]:
        out = []
        for f, case in zip(self.frames, self.cases or [{}] * len(self.frames)):
            out.append(f.to_dict() | case)
        out.append({"rule": self.finish})
        return out

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records())


def solve_habo(k: HaboGraph, max_steps: Optional[int] = None) -> tuple[DominatingSet, ReductionTrace]:
    """A certified dominating set of size at most ``ceil(2n/7)``."""
    if not k.dense:
        raise InvalidInput(f"need at least {ceil_half_plus(k.n)} hats for n={k.n}, got {k.t}")
    trace = ReductionTrace()
    cur = k
    limit = max_steps if max_steps is not None else 4 * k.n * k.n + 100
    while cur.n > BASE_CASE_MAX_N:
        if len(trace.frames) >= limit:
            raise StructureInvalid(f"rule selection did not finish within {limit} steps")
        choice = select_rule(cur)
        if choice is None:
            break
        rule, pos = choice
        cur, frame = apply_rule(cur, rule, pos)
        trace.frames.append(frame)
    if cur.n <= BASE_CASE_MAX_N:
        d = base_case_dominate(cur)
        trace.finish = "BaseCase"
    else:
        d = terminal_dominate(cur)
        trace.finish = "Terminal"
    cases = []
    for frame in reversed(trace.frames):
        state = frame_state(frame, d.vertices)
        entry = case_table(frame.rule).get(state)
        d = lift(d, frame)
        cases.append({"state": list(state), "case": entry.source if entry else None})
    trace.cases = cases[::-1]
    missing = undominated(d.vertices, k.adjacency())
    if missing:  # pragma: no cover - lift certifies every step
        raise BoundViolated(f"final set leaves {missing[:5]} undominated")
    if d.size > ceil_2n_7(k.n):
        raise BoundViolated(f"|D|={d.size} exceeds ceil(2n/7)={ceil_2n_7(k.n)} for n={k.n}")
    return d, trace
