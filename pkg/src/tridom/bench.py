"""Batch verification suites, shared by ``tridom bench`` and the test-suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import Falsification
from .graph_core import ChordedCycle, Side, two_vertices, undominated
from .habo import rules as habo_rules
from .habo.graph import SEGMENT_EDGES, HaboGraph
from .habo.solver import banded_min_dominating, base_case_dominate, ceil_2n_7, solve_habo
from .normalize import find_violation, normalize
from .outerplanar import cw_bound_check, min_dominating_set_side
from .pipeline import bound_table, dominate
from .testkit import (
    GenConfig,
    Mode,
    _side_chords,
    brute_gamma,
    exact_gamma,
    gen_habo,
    gen_triangulation,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    checked: int = 0
    violations: int = 0
    seconds: float = 0.0
    time_limit: float | None = None
    max_ratio: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def in_time(self) -> bool:
        return self.time_limit is None or self.seconds < self.time_limit

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.violations == 0 and self.in_time

    def fail(self, note: str) -> None:
        self.violations += 1
        if len(self.notes) < 10:
            self.notes.append(note)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" max|D|*7/2n={self.max_ratio:.3f}" if self.max_ratio is not None else ""
        limit = f"/{self.time_limit:g}s" if self.time_limit is not None else ""
        return (f"[{status}] {self.number}. {self.name}: checked={self.checked} "
                f"violations={self.violations} time={self.seconds:.2f}s{limit}{extra}")

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "checked": self.checked, "violations": self.violations,
                "seconds": round(self.seconds, 3), "time_limit": self.time_limit,
                "max_ratio": self.max_ratio, "notes": self.notes}


def _ratio(size: int, n: int) -> float:
    return size * 7 / (2 * n)


# --------------------------------------------------------------------------
# instance streams


def triangulation_instances(count: int, n_min: int = 6, n_max: int = 24,
                            seed: int = 0) -> Iterator[ChordedCycle]:
    """Seeded δ≥4 triangulations; every other one starts from dense 2-chords."""
    span = n_max - n_min + 1
    for i in range(count):
        mode = Mode.MIN_DEG4_TRIANGULATION if i % 2 == 0 else Mode.DENSE_TRIANGULATION
        yield gen_triangulation(GenConfig(n_min + (i // 2) % span, seed + i, mode))


def habo_instances(count: int, n_min: int = 7, n_max: int = 80,
                   seed: int = 0) -> Iterator[HaboGraph]:
    rng = random.Random(seed)
    for i in range(count):
        if i % 10 == 9:
            x = rng.randint(1, (n_max - 3) // 8)
            y = rng.randint(1, min(x, (n_max - 8 * x) // 3))
            yield gen_habo(GenConfig(8 * x + 3 * y, seed + i, Mode.TERMINAL_PATTERN, x, y))
        else:
            yield gen_habo(GenConfig(rng.randint(n_min, n_max), seed + i, Mode.HABO_DENSE))


def all_hat_sets(n: int) -> Iterator[frozenset]:
    """Every hat set on an n-cycle with runs of at most two, each exactly once."""

    def words(rest: int) -> Iterator[str]:
        if rest == 0:
            yield ""
            return
        for c in "ABO":
            if SEGMENT_EDGES[c] <= rest:
                for w in words(rest - SEGMENT_EDGES[c]):
                    yield c + w

    # each tiling is read from the segment covering cycle edge (0, 1)
    for w in words(n):
        for shift in range(SEGMENT_EDGES[w[0]]):
            yield HaboGraph.from_kinds(w, (n - shift) % n).hats


# --------------------------------------------------------------------------
# criteria


def criterion_main_theorem(count: int = 300, seed: int = 0) -> CriterionResult:
    res = CriterionResult(1, "dominate within max(ceil(2n/7), floor(5n/16)), "
                             "delta>=4 triangulations, 6<=n<=24", time_limit=60.0)
    instances = list(triangulation_instances(count, seed=seed))
    start = time.perf_counter()
    ratio = 0.0
    for cc in instances:
        res.checked += 1
        try:
            cert = dominate(cc)
        except Falsification as exc:
            res.fail(f"n={cc.n}: {type(exc).__name__}: {exc}")
            continue
        if undominated(cert.set.vertices, cc.adjacency()) or cert.set.size > cert.bound:
            res.fail(f"n={cc.n}: set {cert.set.sorted()} not certified within {cert.bound}")
        ratio = max(ratio, _ratio(cert.set.size, cc.n))
    res.seconds = time.perf_counter() - start
    res.max_ratio = ratio
    return res


def criterion_habo(count: int = 500, seed: int = 0) -> CriterionResult:
    res = CriterionResult(2, "solve_habo within ceil(2n/7), dense (H,A,B,O)-graphs, "
                             "7<=n<=80", time_limit=120.0)
    instances = list(habo_instances(count, seed=seed))
    start = time.perf_counter()
    ratio = 0.0
    for k in instances:
        res.checked += 1
        if not k.dense:
            res.fail(f"generator produced a sparse instance n={k.n} t={k.t}")
            continue
        try:
            d, _ = solve_habo(k)
        except Falsification as exc:
            res.fail(f"n={k.n} hats={sorted(k.hats)}: {type(exc).__name__}: {exc}")
            continue
        if undominated(d.vertices, k.adjacency()) or d.size > ceil_2n_7(k.n):
            res.fail(f"n={k.n}: |D|={d.size} or not dominating")
        ratio = max(ratio, _ratio(d.size, k.n))
    res.seconds = time.perf_counter() - start
    res.max_ratio = ratio
    return res


STATED_EXCEPTIONAL = frozenset({6, 8, 9, 11, 12, 15, 19, 22, 25})
EXPECTED_BOUNDS = {"Switch": 0, "R1": 1, "R2": 1, "R3": 1, "R4": 2, "R5": 2, "R6": 4, "R7": 3}

# (rule, D' on the new window in label form) -> the vertex list expected back
STATED_LISTS = [
    ("R1", {1, 8}, {1, 4, 8}),
    ("R2", {1}, {1, 5}),
    ("R6", set(), {3, 6, 9, 13}),
    ("R7", {12}, {1, 5, 7, 12}),
    ("R7", set(), {2, 5, 10}),
]


def _local_closure(word: str) -> list[int]:
    # independent of rules.window_neighbourhoods: built from explicit chords
    if not word:
        return [1]
    m = 1 + sum(SEGMENT_EDGES[c] for c in word)
    edges = {(i, i + 1) for i in range(m - 1)}
    pos = 0
    for c in word:
        if c == "A":
            edges.add((pos, pos + 2))
        elif c == "B":
            edges |= {(pos, pos + 2), (pos + 1, pos + 3)}
        pos += SEGMENT_EDGES[c]
    nb = [1 << v for v in range(m)]
    for a, b in edges:
        nb[a] |= 1 << b
        nb[b] |= 1 << a
    return nb


def check_rule(rule: habo_rules.Rule) -> list[str]:
    """Exhaustively replay every D' pattern on the new window; returns problems found."""
    problems = []
    table = habo_rules.case_table(rule)
    old_nb, new_nb = _local_closure(rule.pattern), _local_closure(rule.replacement)
    m, mp = len(old_nb), len(new_nb)
    if rule.bound != EXPECTED_BOUNDS[rule.name]:
        problems.append(f"{rule.label}: bound {rule.bound} != {EXPECTED_BOUNDS[rule.name]}")
    for dmask in range(1 << mp):
        cover = 0
        for j in range(mp):
            if dmask >> j & 1:
                cover |= new_nb[j]
        for left in (False, True):
            for right in (False, True):
                c = cover | (1 if left else 0) | ((1 << (mp - 1)) if right else 0)
                if c != (1 << mp) - 1:
                    continue
                entry = table.get((dmask, left, right))
                if entry is None:
                    problems.append(f"{rule.label}: no entry for {(dmask, left, right)}")
                    continue
                keep = sum(1 << i for i in entry.keep)
                got = (1 if left else 0) | ((1 << (m - 1)) if right else 0)
                for i in range(m):
                    if keep >> i & 1:
                        got |= old_nb[i]
                # window ends of D' must stay in D with their old outside neighbours
                need = 0
                if dmask & 1:
                    need |= 1 | ((1 << (m - 1)) if rule.merged else 0)
                if dmask >> (mp - 1) & 1:
                    need |= 1 << (m - 1)
                if got != (1 << m) - 1:
                    problems.append(f"{rule.label}: state {(dmask, left, right)} leaves window "
                                    f"vertices undominated")
                if keep & need != need:
                    problems.append(f"{rule.label}: state {(dmask, left, right)} drops an end")
                if len(entry.keep) - bin(dmask).count("1") > rule.bound:
                    problems.append(f"{rule.label}: state {(dmask, left, right)} exceeds bound")
    return problems


def _stated_states(rule: habo_rules.Rule, labels: set) -> list[tuple[int, bool, bool]]:
    idx = {lab: j for j, lab in enumerate(rule.after_labels)}
    dmask = sum(1 << idx[lab] for lab in labels)
    return [s for s in habo_rules.case_table(rule) if s[0] == dmask]


def criterion_rules() -> CriterionResult:
    res = CriterionResult(3, "rule soundness: exhaustive lifting, additive bounds, "
                             "stated vertex lists", time_limit=10.0)
    start = time.perf_counter()
    habo_rules.case_table.cache_clear()
    for name, rule in habo_rules.RULES.items():
        for r in (rule, rule.mirror()):
            res.checked += 1
            for p in check_rule(r):
                res.fail(p)
    for name, labels, stated in STATED_LISTS:
        rule = habo_rules.RULES[name]
        res.checked += 1
        states = _stated_states(rule, labels)
        if not states:
            res.fail(f"{name}: no state with D' = {sorted(labels)}")
        for s in states:
            entry = habo_rules.case_table(rule)[s]
            want = frozenset(lab - 1 for lab in stated)
            if entry.keep != want or not habo_rules.entry_is_valid(rule, s, want):
                res.fail(f"{name}: state {s} uses {sorted(i + 1 for i in entry.keep)}, "
                         f"stated {sorted(stated)}")
    res.seconds = time.perf_counter() - start
    return res


def _random_graph(n: int, rng: random.Random) -> list[set[int]]:
    kind = rng.randrange(3)
    if kind == 0:
        p = rng.uniform(0.1, 0.6)
        adj = [set() for _ in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    adj[u].add(v)
                    adj[v].add(u)
        return adj
    if kind == 1 and n >= 4:
        return gen_triangulation(GenConfig(n, rng.getrandbits(32),
                                           Mode.RANDOM_TRIANGULATION)).adjacency()
    if n >= 5:
        return gen_habo(GenConfig(n, rng.getrandbits(32), Mode.HABO_DENSE)).adjacency()
    return [set(range(n)) - {v} for v in range(n)]


def octahedron() -> ChordedCycle:
    return ChordedCycle(6, frozenset({(0, 2), (0, 3), (3, 5)}),
                        frozenset({(1, 4), (2, 4), (1, 5)}))


def criterion_oracle(count: int = 200, seed: int = 0) -> CriterionResult:
    res = CriterionResult(4, "oracle anchors and branch-and-bound vs subset search, n<=12")
    start = time.perf_counter()
    anchors = [("octahedron", octahedron().adjacency(), 2),
               ("K3", [{1, 2}, {0, 2}, {0, 1}], 1)]
    for name, adj, want in anchors:
        res.checked += 1
        got = exact_gamma(adj)[0]
        if got != want:
            res.fail(f"{name}: exact_gamma={got}, expected {want}")
    rng = random.Random(seed)
    for _ in range(count):
        adj = _random_graph(rng.randint(1, 12), rng)
        res.checked += 1
        g_bb, w = exact_gamma(adj)
        g_bf, _ = brute_gamma(adj)
        if g_bb != g_bf or len(w) != g_bb or undominated(w, adj):
            res.fail(f"n={len(adj)}: branch and bound {g_bb} vs subset search {g_bf}")
    res.seconds = time.perf_counter() - start
    return res


def criterion_base_case(n_max: int = 20) -> CriterionResult:
    res = CriterionResult(5, "base case size 1+ceil((n-5)/3) <= ceil(2n/7), every dense "
                             "graph with 5<=n<=20")
    start = time.perf_counter()
    for n in range(5, n_max + 1):
        want = 1 + -(-(n - 5) // 3)
        if want > ceil_2n_7(n):
            res.fail(f"n={n}: formula {want} > ceil(2n/7)={ceil_2n_7(n)}")
        res.checked += 1
        graphs = 0
        for hats in all_hat_sets(n):
            if 2 * len(hats) < n + 1:
                continue
            k = HaboGraph(n, hats)
            graphs += 1
            try:
                size = base_case_dominate(k).size
            except Exception as exc:
                res.fail(f"n={n} hats={sorted(hats)}: {type(exc).__name__}: {exc}")
                continue
            if size != want:
                res.fail(f"n={n} hats={sorted(hats)}: size {size} != {want}")
        res.checked += graphs
    res.seconds = time.perf_counter() - start
    return res


def side_instances(count: int, seed: int = 0, n_min: int = 4, n_max: int = 14):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        side = rng.choice((Side.INNER, Side.OUTER))
        chords = frozenset(_side_chords(n, rng, rng.random()))
        if side is Side.INNER:
            yield ChordedCycle(n, chords, frozenset()), side
        else:
            yield ChordedCycle(n, frozenset(), chords), side


def criterion_outerplanar(count: int = 2000, seed: int = 0) -> CriterionResult:
    res = CriterionResult(6, "outerplanar DP = brute force and |D| <= (n+t)/4, 4<=n<=14")
    start = time.perf_counter()
    for cc, side in side_instances(count, seed):
        res.checked += 1
        d = min_dominating_set_side(cc, side)
        adj = cc.side_adjacency(side)
        best, _ = brute_gamma(adj)
        if d.size != best or undominated(d.vertices, adj):
            res.fail(f"n={cc.n}: DP {d.size} vs brute force {best}")
        try:
            cw_bound_check(cc, side, d)
        except Falsification as exc:
            res.fail(str(exc))
    res.seconds = time.perf_counter() - start
    return res


def _has_three_run(cc: ChordedCycle) -> bool:
    flags = [False] * cc.n
    for v, _ in two_vertices(cc):
        flags[v] = True
    n = cc.n
    return any(flags[i] and flags[(i + 1) % n] and flags[(i + 2) % n] for i in range(n))


def criterion_normalization(count: int = 200, seed: int = 0,
                            gamma_max_n: int = 14) -> CriterionResult:
    res = CriterionResult(7, "normalize within n^2 steps, no three 2-vertices in a row, "
                             "same graph, same gamma for n<=14")
    start = time.perf_counter()
    for cc in triangulation_instances(count, seed=seed):
        if any(len(a) == cc.n - 1 for a in cc.adjacency()):
            continue
        res.checked += 1
        try:
            out = normalize(cc)
        except Exception as exc:
            res.fail(f"n={cc.n}: {type(exc).__name__}: {exc}")
            continue
        if len(out.steps) > cc.n ** 2 or find_violation(out.cc) or _has_three_run(out.cc):
            res.fail(f"n={cc.n}: not normalized after {len(out.steps)} steps")
        mapped = {frozenset((out.origin[a], out.origin[b])) for a, b in out.cc.edges()}
        if mapped != {frozenset(e) for e in cc.edges()}:
            res.fail(f"n={cc.n}: edge set changed")
        if cc.n <= gamma_max_n and exact_gamma(out.cc)[0] != exact_gamma(cc)[0]:
            res.fail(f"n={cc.n}: gamma changed")
    res.seconds = time.perf_counter() - start
    return res


def criterion_crossover(n_max: int = 10_000) -> CriterionResult:
    res = CriterionResult(8, "exceptional set {6,8,9,11,12,15,19,22,25} and "
                             "ceil(2n/7) <= floor(5n/16) for 26<=n<=10^4")
    start = time.perf_counter()
    # delta >= 4 forces n >= 6, so smaller n are outside the statement
    found = {n for n in range(6, 26) if bound_table(n).exceptional}
    res.checked += 1
    if found != STATED_EXCEPTIONAL:
        res.fail(f"n in [6,25] with ceil(2n/7) > floor(5n/16) is {sorted(found)}; "
                 f"extra {sorted(found - STATED_EXCEPTIONAL)}, "
                 f"missing {sorted(STATED_EXCEPTIONAL - found)}")
    for n in range(26, n_max + 1):
        res.checked += 1
        row = bound_table(n)
        if row.exceptional or row.max != row.five_sixteenths:
            res.fail(f"n={n}: {row}")
    res.seconds = time.perf_counter() - start
    return res


def oracle_cross_check(count: int = 200, seed: int = 0) -> CriterionResult:
    """Exact solvers against each other: banded DP and side DP vs branch and bound."""
    res = CriterionResult(0, "banded DP and side DP agree with the exact oracle")
    start = time.perf_counter()
    rng = random.Random(seed)
    for i in range(count):
        k = gen_habo(GenConfig(rng.randint(5, 24), seed + i, Mode.HABO_DENSE))
        res.checked += 1
        dp = banded_min_dominating(k)
        if len(dp) != exact_gamma(k)[0] or undominated(dp, k.adjacency()):
            res.fail(f"banded DP {len(dp)} on n={k.n} hats={sorted(k.hats)}")
    for cc, side in side_instances(count, seed):
        res.checked += 1
        d = min_dominating_set_side(cc, side)
        if d.size != exact_gamma(cc.side_adjacency(side))[0]:
            res.fail(f"side DP {d.size} on n={cc.n}")
    res.seconds = time.perf_counter() - start
    return res


ACCEPTANCE: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_main_theorem,
    2: criterion_habo,
    3: criterion_rules,
    4: criterion_oracle,
    5: criterion_base_case,
    6: criterion_outerplanar,
    7: criterion_normalization,
    8: criterion_crossover,
}

SUITES: dict[str, list[Callable[[], CriterionResult]]] = {
    "acceptance": list(ACCEPTANCE.values()),
    "rules": [criterion_rules],
    "oracle-x-check": [criterion_oracle, oracle_cross_check],
}
