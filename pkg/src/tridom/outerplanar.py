"""Exact domination of one triangulated side of a chorded cycle.

A side together with the cycle is a maximal outerplanar graph.  Every side
edge ``(u, v)`` with ``u < v`` cuts off the sub-polygon ``u, u+1, ..., v``,
which is either the single edge (``v = u + 1``) or the triangle ``u w v``
glued to the sub-polygons of ``(u, w)`` and ``(w, v)``.  The dynamic
programme below runs over exactly these sub-polygons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput, SideNotTriangulated, TheoremViolated
from .graph_core import ChordedCycle, DominatingSet, Side, side_degree

IN, DOM, UND = 0, 1, 2


@dataclass(frozen=True)
class FaceTree:
    """Triangles of one side; two are adjacent when they share a chord."""

    nodes: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]
    root: int = 0


def _apex_finder(cc: ChordedCycle, side: Side):
    adj = cc.side_adjacency(side)

    def apex(u: int, v: int) -> int:
        inside = [w for w in adj[u] if u < w < v]
        if not inside:
            raise SideNotTriangulated(f"{side.value} side has no triangle on ({u},{v})")
        w = max(inside)
        if v not in adj[w]:
            raise SideNotTriangulated(f"{side.value} side has no triangle on ({u},{v})")
        return w

    return apex


def _check_side(cc: ChordedCycle, side: Side) -> None:
    if cc.n < 3:
        raise SideNotTriangulated(f"a cycle of length {cc.n} has no triangulated side")
    if len(cc.chords(side)) != cc.n - 3:
        raise SideNotTriangulated(
            f"{side.value} side has {len(cc.chords(side))} chords, needs {cc.n - 3}")


def weak_dual(cc: ChordedCycle, s: Side) -> FaceTree:
    """The dual tree of side ``s``, rooted at the triangle on cycle edge ``(0, 1)``."""
    _check_side(cc, s)
    n = cc.n
    # read the polygon as 1, 2, ..., n-1, 0 so that (0, 1) is the outermost edge
    order = list(range(1, n)) + [0]
    index = {v: i for i, v in enumerate(order)}
    rot = ChordedCycle(n, frozenset(tuple(sorted((index[a], index[b]))) for a, b in cc.inner),
                       frozenset(tuple(sorted((index[a], index[b]))) for a, b in cc.outer))
    apex = _apex_finder(rot, s)
    nodes: list[tuple[int, int, int]] = []
    edges: list[tuple[int, int]] = []
    stack = [(0, n - 1, None)]
    while stack:
        u, v, parent = stack.pop()
        if v - u < 2:
            continue
        w = apex(u, v)
        me = len(nodes)
        nodes.append(tuple(sorted((order[u], order[w], order[v]))))
        if parent is not None:
            edges.append((parent, me))
        stack.append((w, v, me))
        stack.append((u, w, me))
    return FaceTree(tuple(nodes), tuple(edges), 0)


def _better(a, b) -> bool:
    return b is None or a < b


def min_dominating_set_side(cc: ChordedCycle, s: Side) -> DominatingSet:
    """A minimum dominating set of the cycle plus the chords of side ``s``.

    Ties between minimum sets go to the smaller sorted vertex tuple.
    """
    _check_side(cc, s)
    n = cc.n
    apex = _apex_finder(cc, s)
    base = {(IN, IN): (2, None), (IN, DOM): (1, None), (DOM, IN): (1, None), (UND, UND): (0, None)}

    # iterative post-order over the sub-polygons
    tables: dict[tuple[int, int], dict] = {}
    stack = [(0, n - 1, False)]
    while stack:
        u, v, ready = stack.pop()
        if v - u == 1:
            tables[(u, v)] = {k: (c, tuple(x for x, st in ((u, k[0]), (v, k[1])) if st == IN))
                              for k, (c, _) in base.items()}
            continue
        w = apex(u, v)
        if not ready:
            stack.append((u, v, True))
            stack.append((u, w, False))
            stack.append((w, v, False))
            continue
        left, right = tables.pop((u, w)), tables.pop((w, v))
        out: dict = {}
        for (su, sw1), (c1, set1) in left.items():
            for (sw2, sv), (c2, set2) in right.items():
                if (sw1 == IN) != (sw2 == IN):
                    continue
                if sw1 == IN:
                    cost, chosen = c1 + c2 - 1, tuple(sorted(set(set1) | set(set2)))
                else:
                    if sw1 != DOM and sw2 != DOM:
                        continue
                    cost, chosen = c1 + c2, tuple(sorted(set1 + set2))
                fu = IN if su == IN else DOM if (su == DOM or sv == IN) else UND
                fv = IN if sv == IN else DOM if (sv == DOM or su == IN) else UND
                cand = (cost, chosen)
                if _better(cand, out.get((fu, fv))):
                    out[(fu, fv)] = cand
        tables[(u, v)] = out
    root = tables[(0, n - 1)]
    best = min(val for (a, b), val in root.items() if a != UND and b != UND)
    return DominatingSet.certify(best[1], cc.side_adjacency(s), cc.digest())


def side_two_vertices(cc: ChordedCycle, s: Side) -> int:
    return sum(1 for v in range(cc.n) if side_degree(cc, v, s) == 2)


def cw_bound_check(cc: ChordedCycle, s: Side, d: DominatingSet) -> bool:
    """Check ``|d| <= (n + t)/4``, ``t`` the number of side-degree-2 vertices."""
    if cc.n < 4:
        raise InvalidInput(f"the (n+t)/4 bound needs n >= 4, got {cc.n}")
    t = side_two_vertices(cc, s)
    if 4 * d.size > cc.n + t:
        raise TheoremViolated(f"|D|={d.size} > (n+t)/4 = ({cc.n}+{t})/4 on the {s.value} side")
    return True
