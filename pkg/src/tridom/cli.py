"""Command-line front end: tridom check, dominate, gamma, gen and bench.

Exit codes: 0 ok, 1 a bound or theorem was falsified, 2 invalid input,
3 a resource limit was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import BudgetExhausted, Falsification, InvalidInput, ResourceLimit, TridomError
from .graph_core import (
    content_lines,
    find_hamilton_cycle,
    parse_chorded,
    parse_edge_list,
    split_chords,
    validate,
)
from .habo.graph import HaboGraph, parse_habo
from .habo.solver import solve_habo

EXIT_OK, EXIT_FALSIFIED, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_BUDGET = 1_000_000

GEN_MODES = {
    "tri-random": "RandomTriangulation",
    "tri-mindeg4": "MinDeg4Triangulation",
    "tri-dense": "DenseTriangulation",
    "habo-dense": "HaboDense",
    "terminal": "TerminalPattern",
}


class Output:
    """JSON lines unless a human is watching (or ``--human`` forces tables)."""

    def __init__(self, stream, human: Optional[bool]):
        self.stream = stream
        self.human = stream.isatty() if human is None else human

    def record(self, obj: dict, text: Optional[str] = None) -> None:
        if self.human and text is not None:
            self.stream.write(text.rstrip("\n") + "\n")
        else:
            self.stream.write(json.dumps(obj, sort_keys=True) + "\n")


def detect_format(text: str) -> str:
    lines = list(content_lines(text))
    if len(lines) >= 2:
        tag = lines[1][1].split()[0]
        if tag in ("I", "O"):
            return "chorded"
        if tag == "H":
            return "habo"
    return "edge-list"


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("TRIDOM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInput(f"TRIDOM_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def load(path: str, fmt: str, budget: int):
    """Read ``path``; returns (graph object, labels), labels mapping positions to input ids."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror or exc}") from None
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "chorded":
        cc = parse_chorded(text)
        return cc, list(range(cc.n))
    if fmt == "habo":
        k = parse_habo(text)
        return k, list(range(k.n))
    g = parse_edge_list(text)
    cycle = find_hamilton_cycle(g, budget)
    if cycle is None:
        raise InvalidInput("graph has no Hamilton cycle")
    return split_chords(g, cycle), cycle


def _format_flag(args) -> str:
    for name in ("edge_list", "chorded", "habo"):
        if getattr(args, name, False):
            return name.replace("_", "-")
    return "auto"


def cmd_check(args, out: Output) -> int:
    obj, _ = load(args.path, _format_flag(args), _budget(args))
    if isinstance(obj, HaboGraph):
        rec = {"n": obj.n, "t": obj.t, "dense": obj.dense, "segments": obj.segments.kinds,
               "overall": obj.dense}
        out.record(rec, f"n={obj.n} t={obj.t} dense={obj.dense} segments={obj.segments.kinds}")
        return EXIT_OK if obj.dense or not args.require_dense else EXIT_INVALID
    report = validate(obj, require_min_degree_4=args.min_degree_4)
    lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "")
             for c in report.checks]
    out.record(report.to_dict(), "\n".join(lines))
    return EXIT_OK if report.overall else EXIT_INVALID


def cmd_dominate(args, out: Output) -> int:
    from .pipeline import dominate

    obj, labels = load(args.path, _format_flag(args), _budget(args))
    if isinstance(obj, HaboGraph):
        d, trace = solve_habo(obj)
        rec = {"n": obj.n, "branch": "Habo", "set": d.sorted(), "size": d.size,
               "bound": -(-2 * obj.n // 7), "valid": True, "trace_length": len(trace)}
        if args.trace:
            for r in trace.records():
                out.record({"trace": r})
        out.record(rec, f"n={obj.n} |D|={d.size} <= {rec['bound']} set={d.sorted()}")
        return EXIT_OK
    cert = dominate(obj)
    rec = cert.to_dict()
    rec["set"] = sorted(labels[v] for v in cert.set.vertices)
    rec["size"] = cert.set.size
    if args.trace:
        for key, value in sorted(cert.trace.items()):
            out.record({"trace": {key: value}})
    human = (f"n={cert.n} branch={cert.branch.value} |D|={cert.set.size} <= {cert.bound} "
             f"set={rec['set']}")
    out.record(rec, human)
    return EXIT_OK


def cmd_gamma(args, out: Output) -> int:
    from .testkit import exact_gamma

    obj, labels = load(args.path, _format_flag(args), _budget(args))
    size, witness = exact_gamma(obj)
    ws = sorted(labels[v] for v in witness)
    out.record({"n": len(labels), "gamma": size, "witness": ws}, f"gamma={size} witness={ws}")
    return EXIT_OK


def _gen_params(tokens: Sequence[str]) -> dict:
    params: dict[str, int] = {}
    positional = ["n", "seed", "count"]
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            if not positional:
                raise InvalidInput(f"unexpected argument {tok!r}")
            key, value = positional.pop(0), tok
        elif key not in ("n", "seed", "count", "x", "y"):
            raise InvalidInput(f"unknown parameter {key!r}")
        elif key in positional:
            positional.remove(key)
        try:
            params[key] = int(value)
        except ValueError:
            raise InvalidInput(f"{key} must be an integer, got {value!r}") from None
    return params


def cmd_gen(args, out: Output) -> int:
    from .testkit import GenConfig, Mode, gen_habo, gen_triangulation

    mode = Mode(GEN_MODES[args.mode])
    p = _gen_params(args.params)
    x, y = p.get("x"), p.get("y")
    if mode is Mode.TERMINAL_PATTERN and x is not None and y is not None:
        p.setdefault("n", 8 * x + 3 * y)
    if "n" not in p:
        raise InvalidInput("gen needs n (or x= and y= for terminal)")
    seed, count = p.get("seed", 0), p.get("count", 1)
    for i in range(count):
        cfg = GenConfig(p["n"], seed + i, mode, x, y)
        if mode in (Mode.HABO_DENSE, Mode.TERMINAL_PATTERN):
            inst = gen_habo(cfg)
            rec = {"mode": mode.value, "n": inst.n, "seed": seed + i, "t": inst.t,
                   "segments": inst.segments.kinds, "text": inst.to_text()}
        else:
            inst = gen_triangulation(cfg)
            rec = {"mode": mode.value, "n": inst.n, "seed": seed + i, "text": inst.to_text()}
        out.record(rec, inst.to_text())
    return EXIT_OK


def cmd_bench(args, out: Output) -> int:
    from .bench import SUITES

    falsified = slow = False
    for run in SUITES[args.suite]:
        res = run()
        out.record(res.to_dict(), res.line())
        falsified |= res.violations > 0 or res.checked == 0
        slow |= not res.in_time
    if falsified:
        return EXIT_FALSIFIED
    return EXIT_RESOURCE if slow else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tridom", description=__doc__.splitlines()[0])
    parser.add_argument("--human", action="store_true", default=None,
                        help="print human-readable text even when not on a terminal")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)

    def with_input(p):
        p.add_argument("path")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--edge-list", action="store_true")
        fmt.add_argument("--chorded", action="store_true")
        fmt.add_argument("--habo", action="store_true")
        p.add_argument("--budget", type=int, default=None,
                       help="Hamilton-cycle search node cap (default $TRIDOM_BUDGET or 1e6)")
        return p

    p = with_input(sub.add_parser("check", parents=[common], help="validate an instance"))
    p.add_argument("--min-degree-4", action="store_true")
    p.add_argument("--require-dense", action="store_true")
    p.set_defaults(func=cmd_check)

    p = with_input(sub.add_parser("dominate", parents=[common], help="certified dominating set"))
    p.add_argument("--json", action="store_true", help="single-line JSON certificate")
    p.add_argument("--trace", action="store_true", help="also emit the trace records")
    p.set_defaults(func=cmd_dominate)

    p = with_input(sub.add_parser("gamma", parents=[common], help="exact domination number (n <= 30)"))
    p.add_argument("--exact", action="store_true", help="accepted for clarity; always exact")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("gen", parents=[common], help="generate seeded instances")
    p.add_argument("mode", choices=sorted(GEN_MODES))
    p.add_argument("params", nargs="*", help="N [SEED [COUNT]] or key=value (n, seed, count, x, y)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["acceptance", "rules", "oracle-x-check"])
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    out = Output(stdout, True if args.human else None)
    if getattr(args, "json", False):
        out.human = False
    try:
        return args.func(args, out)
    except Falsification as exc:
        stderr.write(f"FALSIFIED {type(exc).__name__}: {exc}\n")
        return EXIT_FALSIFIED
    except (ResourceLimit, BudgetExhausted) as exc:
        stderr.write(f"resource limit {type(exc).__name__}: {exc}\n")
        return EXIT_RESOURCE
    except InvalidInput as exc:
        stderr.write(f"invalid input {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except TridomError as exc:  # pragma: no cover - every error has a category
        stderr.write(f"error {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
