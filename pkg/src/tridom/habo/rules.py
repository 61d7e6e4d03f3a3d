"""Switch and reductions R1-R7 as local rewrites with dominating-set lifting.

Each rule replaces a window of consecutive segments by a smaller (or, for the
switch, equally long) window.  The pre-image window shares only its two end
vertices with the rest of the cycle, and chords never leave a segment, so any
dominating set ``D'`` of the rewritten graph interacts with the window through
a small *state*:

* which vertices of the new window are in ``D'`` (a bitmask), and
* whether each window end is already dominated from outside the window.

For every state that can occur, the case table stores which pre-image window
vertices to put back in ``D``.  Entries come from hand-written hints, one
per rule, when the hint is valid for the state; every other entry is the
smallest valid choice found by exhaustive search over subsets of the window.  Either way, each entry is re-checked when the table is built, so
an unsound rule fails at import time rather than on some later instance.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from ..errors import (
    DensityWouldBreak,
    LiftError,
    PatternMismatch,
    SizePreconditionViolated,
)
from ..graph_core import DominatingSet, undominated
from .graph import SEGMENT_EDGES, SEGMENT_HATS, HaboGraph

State = tuple[int, bool, bool]
Hint = Callable[[set, bool, bool], Optional[set]]


@dataclass(frozen=True)
class Rule:
    """A rewrite ``before -> after`` over segment words, in the base orientation.

    ``after == ""`` means the window collapses to one vertex that takes over
    both ends.  ``after_labels`` name the vertices of the new window the way
    the hint functions do.
    ``mirrored`` reads both words right to left.
    """

    name: str
    before: str
    after: str
    bound: int
    min_n: int
    after_labels: tuple
    mirrored: bool = False

    @property
    def pattern(self) -> str:
        return self.before[::-1] if self.mirrored else self.before

    @property
    def replacement(self) -> str:
        return self.after[::-1] if self.mirrored else self.after

    @property
    def merged(self) -> bool:
        return not self.after

    @property
    def size(self) -> int:
        return _word_size(self.before)

    @property
    def new_size(self) -> int:
        return _word_size(self.after) if self.after else 1

    @property
    def label(self) -> str:
        return self.name + ("~" if self.mirrored else "")

    def mirror(self) -> "Rule":
        return dataclasses.replace(self, mirrored=not self.mirrored)

    def delta(self) -> tuple[int, int]:
        dt = sum(len(SEGMENT_HATS[c]) for c in self.after) - sum(
            len(SEGMENT_HATS[c]) for c in self.before)
        return self.new_size - self.size, dt

    def __repr__(self):
        return f"Rule({self.label}: {self.pattern} -> {self.replacement or '*'})"


def _word_size(word: str) -> int:
    return 1 + sum(SEGMENT_EDGES[c] for c in word)


# --------------------------------------------------------------------------
# Hand-written lifting hints.  Arguments: D' restricted to the new window,
# in label form; whether vertex 1's side is dominated from outside
# ("above"), and the same for the far end ("below").


def _switch_hint(d, above, below):
    if 1 in d and 6 in d:
        return {1, 3, 6}
    if 1 in d:
        return {1, 4}
    if 6 in d:
        return {2, 6}
    return {2, 4}


def _r1_hint(d, above, below):
    if 1 in d and 8 in d:
        return {1, 4, 8}
    if 1 in d:
        return {1, 6}
    if 8 in d:
        return {3, 8}
    return {3, 6}


def _r2_hint(d, above, below):
    return {1, 5} if 1 in d else {3}


def _r3_hint(d, above, below):
    if 1 in d:
        return {1, 5}
    return {3} if above else {2}


def _r4_hint(d, above, below):
    if 1 in d:
        return {1, 4, 8}
    return {4, 8} if above else {2, 6}


def _r5_hint(d, above, below):
    mid = sorted(d & {10, 11, 12})
    if 1 in d and 13 in d:
        return d | {6, 8}
    if 1 in d:
        return d | {6, 10}
    if not mid:
        return None
    if 13 in d:
        return (d - {mid[0]}) | {2, 4, 8}
    if 10 in d and (11 in d or 12 in d):
        w = 11 if 11 in d else 12
        return (d - {10, w}) | {3, 6, 8, 11}
    if below:
        return (d - {mid[0]}) | {3, 6, 10}
    return (d - {mid[0]}) | {4, 8, 11}


def _r6_hint(d, above, below):
    return None if 15 in d else {3, 6, 9, 13}


def _r7_hint(d, above, below):
    return {1, 5, 7, 12} if 12 in d else {2, 5, 10}


SWITCH = Rule("Switch", "OOOA", "AOOO", 0, 7, (1, 2, 3, 4, 5, 6))
R1 = Rule("R1", "ABA", "B", 1, 11, (1, "x", "y", 8))
R2 = Rule("R2", "AA", "", 1, 11, (1,))
R3 = Rule("R3", "OB", "", 1, 11, (1,))
R4 = Rule("R4", "OAOOA", "", 2, 14, (1,))
R5 = Rule("R5", "BAOOAB", "OB", 2, 15, (1, 10, 11, 12, 13))
R6 = Rule("R6", "AOAOABB", "", 4, 21, (15,))
R7 = Rule("R7", "BBBA", "", 3, 21, (12,))

RULES = {r.name: r for r in (SWITCH, R1, R2, R3, R4, R5, R6, R7)}
HINTS: dict[str, Hint] = {
    "Switch": _switch_hint, "R1": _r1_hint, "R2": _r2_hint, "R3": _r3_hint,
    "R4": _r4_hint, "R5": _r5_hint, "R6": _r6_hint, "R7": _r7_hint,
}


def get_rule(name: str, mirrored: bool = False) -> Rule:
    try:
        rule = RULES[name]
    except KeyError:
        raise PatternMismatch(f"unknown rule {name!r}") from None
    return rule.mirror() if mirrored else rule


# --------------------------------------------------------------------------
# Local window graphs and case tables


def window_neighbourhoods(word: str) -> list[int]:
    """Closed neighbourhoods (bitmasks) of the path-with-chords spelled by ``word``."""
    if not word:
        return [1]
    m = _word_size(word)
    nb = [1 << i for i in range(m)]
    for i in range(m - 1):
        nb[i] |= 1 << (i + 1)
        nb[i + 1] |= 1 << i
    pos = 0
    for c in word:
        for h in SEGMENT_HATS[c]:
            a, b = pos + h - 1, pos + h + 1
            nb[a] |= 1 << b
            nb[b] |= 1 << a
        pos += SEGMENT_EDGES[c]
    return nb


def _cover(nb: list[int], mask: int) -> int:
    out, i = 0, 0
    while mask:
        if mask & 1:
            out |= nb[i]
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class CaseEntry:
    keep: frozenset
    source: str


def _states(rule: Rule):
    """Every (D' on new window, left dominated, right dominated) that can occur."""
    nb = window_neighbourhoods(rule.replacement)
    mp = len(nb)
    full = (1 << mp) - 1
    for dmask in range(1 << mp):
        for left in (False, True):
            for right in (False, True):
                cov = _cover(nb, dmask)
                if left:
                    cov |= 1
                if right:
                    cov |= 1 << (mp - 1)
                if cov == full:
                    yield dmask, left, right


def _required(rule: Rule, dmask: int) -> int:
    m, mp = rule.size, rule.new_size
    req = 0
    if dmask & 1:
        req |= 1
        if rule.merged:
            req |= 1 << (m - 1)
    if dmask >> (mp - 1) & 1:
        req |= 1 << (m - 1)
    return req


def entry_is_valid(rule: Rule, state: State, keep) -> bool:
    """Does ``keep`` (pre-image window indices) lift ``state`` within the rule's bound?"""
    dmask, left, right = state
    m = rule.size
    nb = window_neighbourhoods(rule.pattern)
    smask = sum(1 << i for i in keep)
    if any(not 0 <= i < m for i in keep):
        return False
    req = _required(rule, dmask)
    if smask & req != req:
        return False
    cov = _cover(nb, smask) | (1 if left else 0) | ((1 << (m - 1)) if right else 0)
    return cov == (1 << m) - 1 and len(set(keep)) <= bin(dmask).count("1") + rule.bound


def hinted_entry(rule: Rule, state: State) -> Optional[frozenset]:
    """The hint for ``state`` as pre-image window indices, if the hint covers it."""
    dmask, left, right = state
    m, mp = rule.size, rule.new_size
    labels = rule.after_labels
    if rule.mirrored:
        d = {labels[mp - 1 - j] for j in range(mp) if dmask >> j & 1}
        above, below = right, left
    else:
        d = {labels[j] for j in range(mp) if dmask >> j & 1}
        above, below = left, right
    proposal = HINTS[rule.name](d, above, below)
    if proposal is None:
        return None
    idx = [(m - lab) if rule.mirrored else (lab - 1) for lab in proposal if isinstance(lab, int)]
    return frozenset(idx)


@lru_cache(maxsize=None)
def _subset_order(m: int) -> list[int]:
    masks = list(range(1 << m))
    masks.sort(key=lambda s: (bin(s).count("1"), [i for i in range(m) if s >> i & 1]))
    return masks


@lru_cache(maxsize=None)
def case_table(rule: Rule) -> dict[State, CaseEntry]:
    m = rule.size
    nb = window_neighbourhoods(rule.pattern)
    full = (1 << m) - 1
    dom = [0] * (1 << m)
    for s in range(1, 1 << m):
        low = s & -s
        dom[s] = dom[s ^ low] | nb[low.bit_length() - 1]
    table: dict[State, CaseEntry] = {}
    for state in _states(rule):
        dmask, left, right = state
        hinted = hinted_entry(rule, state)
        if hinted is not None and entry_is_valid(rule, state, hinted):
            table[state] = CaseEntry(hinted, "hint")
            continue
        req = _required(rule, dmask)
        ext = (1 if left else 0) | ((1 << (m - 1)) if right else 0)
        limit = bin(dmask).count("1") + rule.bound
        for s in _subset_order(m):
            if s & req == req and (dom[s] | ext) == full:
                break
        else:  # pragma: no cover - the whole window always works
            raise LiftError(f"{rule.label}: no lift for state {state}")
        if bin(s).count("1") > limit:
            raise LiftError(f"{rule.label}: state {state} needs {bin(s).count('1')} > {limit}")
        table[state] = CaseEntry(frozenset(i for i in range(m) if s >> i & 1), "derived")
    return table


# --------------------------------------------------------------------------
# Applying rules and lifting back


@dataclass(frozen=True)
class LiftFrame:
    rule: Rule
    before: HaboGraph
    after: HaboGraph
    window: tuple[int, ...]
    new_window: tuple[int, ...]
    position_map: dict
    left_outside: frozenset
    right_outside: frozenset

    def to_dict(self) -> dict:
        return {"rule": self.rule.label, "window": list(self.window),
                "n_before": self.before.n, "n_after": self.after.n,
                "t_before": self.before.t, "t_after": self.after.t}


def apply_rule(k: HaboGraph, rule: Rule, pos: int) -> tuple[HaboGraph, LiftFrame]:
    """Rewrite the window of ``rule.pattern`` whose first vertex is cycle position ``pos``."""
    segs = k.segments
    starts = {s.start: i for i, s in enumerate(segs.segments)}
    if pos not in starts or starts[pos] not in segs.find(rule.pattern):
        raise PatternMismatch(f"{rule.label} pattern {rule.pattern} does not start at {pos}")
    if k.n < rule.min_n:
        raise SizePreconditionViolated(f"{rule.label} needs n >= {rule.min_n}, got {k.n}")
    if rule.name == "R7" and segs.x2 < 6:
        raise PatternMismatch(f"R7 needs at least six Bs, found {segs.x2}")
    n, m, mp = k.n, rule.size, rule.new_size
    new_n = n - m + mp
    window = tuple((pos + j) % n for j in range(m))
    interior = set(window[1:-1])
    position_map = {(pos + m + j) % n: mp + j for j in range(n - m)}
    hats = set()
    offset = 0
    for c in rule.replacement:
        hats.update(offset + h for h in SEGMENT_HATS[c])
        offset += SEGMENT_EDGES[c]
    for h in k.hats:
        if h in interior:
            continue
        hats.add(position_map[h])
    after = HaboGraph(new_n, frozenset(hats))
    if k.dense and not after.dense:
        raise DensityWouldBreak(
            f"{rule.label} at {pos}: t'={after.t} < ceil((n'+1)/2) with n'={new_n}")
    adj = after.adjacency()
    left = frozenset(q for q in adj[0] if q in (new_n - 1, new_n - 2) and q >= mp)
    right = frozenset(q for q in adj[mp - 1] if q in (mp, mp + 1) and q < new_n)
    frame = LiftFrame(rule, k, after, window, tuple(range(mp)), position_map, left, right)
    return after, frame


def switch(k: HaboGraph, pos: int, mirrored: bool = False) -> tuple[HaboGraph, LiftFrame]:
    return apply_rule(k, get_rule("Switch", mirrored), pos)


def reduce(k: HaboGraph, rule: str, pos: int, mirrored: bool = False) -> tuple[HaboGraph, LiftFrame]:
    if rule == "Switch":
        raise PatternMismatch("use switch() for the switch operation")
    return apply_rule(k, get_rule(rule, mirrored), pos)


def frame_state(frame: LiftFrame, d_prime) -> State:
    dp = set(d_prime)
    dmask = sum(1 << j for j, p in enumerate(frame.new_window) if p in dp)
    return dmask, bool(dp & frame.left_outside), bool(dp & frame.right_outside)


def lift(d_prime: DominatingSet, frame: LiftFrame) -> DominatingSet:
    """Carry a dominating set of the rewritten graph back through ``frame``."""
    dp = set(d_prime.vertices)
    missing = undominated(dp, frame.after.adjacency())
    if missing:
        raise LiftError(f"{frame.rule.label}: input set leaves {missing[:5]} undominated")
    state = frame_state(frame, dp)
    entry = case_table(frame.rule).get(state)
    if entry is None:
        raise LiftError(f"{frame.rule.label}: case table has no entry for state {state}")
    inverse = {new: old for old, new in frame.position_map.items()}
    mp = len(frame.new_window)
    lifted = {inverse[p] for p in dp if p >= mp} | {frame.window[i] for i in entry.keep}
    if len(lifted) - len(dp) > frame.rule.bound:
        raise LiftError(f"{frame.rule.label}: lift grew by {len(lifted) - len(dp)}"
                        f" > {frame.rule.bound}")
    try:
        return DominatingSet.certify(lifted, frame.before.adjacency(), frame.before.digest())
    except ValueError as exc:
        raise LiftError(f"{frame.rule.label}: {exc}") from None
