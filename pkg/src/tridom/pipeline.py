"""Dominating sets of Hamiltonian plane triangulations with minimum degree 4."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .errors import BoundViolated, InvalidInput, ValidationFailed
from .graph_core import (
    ChordedCycle,
    DominatingSet,
    Side,
    chord_counts,
    has_universal_vertex,
    undominated,
    validate,
)
from .habo.solver import ceil_2n_7, extract_habo, solve_habo
from .normalize import normalize
from .outerplanar import cw_bound_check, min_dominating_set_side

class Branch(enum.Enum):
    UNIVERSAL = "Universal"
    OUTERPLANAR_INNER = "OuterplanarInner"
    OUTERPLANAR_OUTER = "OuterplanarOuter"
    HABO = "Habo"


@dataclass(frozen=True)
class BoundRow:
    two_sevenths: int
    five_sixteenths: int
    max: int
    exceptional: bool


def bound_table(n: int) -> BoundRow:
    a, b = ceil_2n_7(n), 5 * n // 16
    return BoundRow(a, b, max(a, b), a > b)


@dataclass(frozen=True)
class DominationCertificate:
    n: int
    digest: str
    set: DominatingSet
    bound: int
    branch: Branch
    trace: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.set.size <= self.bound

    @property
    def trace_length(self) -> int:
        return self.trace.get("normalization_steps", 0) + self.trace.get("reduction_steps", 0)

    def to_dict(self) -> dict:
        return {"n": self.n, "branch": self.branch.value, "set": self.set.sorted(),
                "bound": self.bound, "valid": self.valid, "trace_length": self.trace_length}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_dominating(cc: ChordedCycle, d) -> bool:
    d = set(d)
    bad = [v for v in d if not 0 <= v < cc.n]
    if bad:
        raise InvalidInput(f"vertices {sorted(bad)} not in 0..{cc.n - 1}")
    return not undominated(d, cc.adjacency())


def dominate(cc: ChordedCycle) -> DominationCertificate:
    report = validate(cc, require_min_degree_4=True)
    if not report.overall:
        raise ValidationFailed(report)
    n = cc.n
    bound = bound_table(n).max
    adj = cc.adjacency()
    trace: dict = {}
    u = has_universal_vertex(cc)
    if u is not None:
        d = DominatingSet.certify({u}, adj, cc.digest())
        branch = Branch.UNIVERSAL
    else:
        norm = normalize(cc)
        trace["normalization_steps"] = len(norm.steps)
        t_inner, t_outer = chord_counts(norm.cc)
        if 4 * t_inner <= n or 4 * t_outer <= n:
            side = Side.INNER if 4 * t_inner <= n else Side.OUTER
            local = min_dominating_set_side(norm.cc, side)
            cw_bound_check(norm.cc, side, local)
            branch = Branch.OUTERPLANAR_INNER if side is Side.INNER else Branch.OUTERPLANAR_OUTER
        else:
            k = extract_habo(norm.cc)
            local, reductions = solve_habo(k)
            trace["reduction_steps"] = len(reductions)
            trace["rules"] = reductions.rule_counts()
            trace["finish"] = reductions.finish
            branch = Branch.HABO
        d = DominatingSet.certify({norm.origin[v] for v in local.vertices}, adj, cc.digest())
    if d.size > bound:
        raise BoundViolated(f"|D|={d.size} exceeds max(ceil(2n/7), floor(5n/16))={bound}")
    return DominationCertificate(n, cc.digest(), d, bound, branch, trace)
