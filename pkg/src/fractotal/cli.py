"""Command-line interface.

Exit codes: 0 success, 1 verification failure or no result, 2 usage or
parse error, 3 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import fixtures
from .coloring import (
    certificate_from_json,
    certificate_to_json,
    describe_violation,
    fractional_total_chromatic_number,
    interval_coloring_from_json,
    interval_coloring_to_json,
    verify_certificate,
    verify_interval_coloring,
    weights_to_interval_assignment,
)
from .construct import construct_coloring
from .decompose import SearchBudgetExceeded, decomposition_to_json, ell_decomposition, verify_decomposition
from .graph import INFINITY, Graph, GraphError, cyclic_edge_connectivity, girth, is_connected, max_degree
from .graphio import ParseError, read_graph
from .recolor import random_task, recolor_tree
from .serialize import dumps, interval_set_to_json, isometry_to_json, q2s, s2q
from .total import DEFAULT_ENUMERATION_BUDGET, BudgetExceeded

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return s2q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def load_graph(source: str) -> Graph:
    """A file path, or the name of a bundled fixture."""
    path = Path(source)
    if path.exists():
        return read_graph(path)
    name = source.removeprefix("fixture:")
    if name in fixtures.NAMES:
        return fixtures.load(name).graph
    raise UsageError(f"no such file or fixture: {source}")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    return "inf" if x == INFINITY else str(x)


def cmd_info(args) -> int:
    g = load_graph(args.graph)
    print(f"vertices {g.n}")
    print(f"edges {g.m}")
    print(f"max degree {max_degree(g)}")
    print(f"girth {_fmt(girth(g))}")
    if g.n and is_connected(g):
        size, _ = cyclic_edge_connectivity(g, max_size=args.max_cut)
        print(f"cyc-conn {'>' + str(args.max_cut) if size is None else _fmt(size)}")
    else:
        print("cyc-conn undefined (disconnected)")
    return OK


def cmd_chi(args) -> int:
    g = load_graph(args.graph)
    res = fractional_total_chromatic_number(g, args.mode, args.budget)
    problems = verify_certificate(res.certificate)
    if problems:  # pragma: no cover
        print("certificate check failed: " + "; ".join(problems), file=sys.stderr)
        return FAILED
    print(f"chi_f'' = {res.value}  (mode {res.mode}, {res.columns} columns)")
    if args.certificate:
        Path(args.certificate).write_text(dumps(certificate_to_json(res.certificate)), encoding="utf-8")
    if args.coloring:
        c = weights_to_interval_assignment(res.coloring, res.value)
        Path(args.coloring).write_text(dumps(interval_coloring_to_json(c)), encoding="utf-8")
    return OK


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    try:
        data = json.loads(Path(args.coloring).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.coloring}: {exc}") from None
    try:
        if "dual" in data:
            problems = verify_certificate(certificate_from_json(g, data))
        else:
            c = interval_coloring_from_json(g, data)
            problems = [describe_violation(g, v) for v in verify_interval_coloring(g, c)]
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed coloring file: {exc}") from None
    if problems:
        print(f"REJECT: {len(problems)} violation(s)")
        for p in problems:
            print(f"  {p}")
        return FAILED
    print("OK")
    return OK


def cmd_decompose(args) -> int:
    g = load_graph(args.graph)
    ell = args.ell if args.ell is not None else max_degree(g)
    try:
        d = ell_decomposition(g, ell, args.node_budget)
    except SearchBudgetExceeded as exc:
        print(f"search gave up: {exc}", file=sys.stderr)
        return BUDGET
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if d is None:
        print(f"no {ell}-decomposition exists", file=sys.stderr)
        return FAILED
    problems = verify_decomposition(g, d, ell)
    if problems:  # pragma: no cover
        print("; ".join(problems), file=sys.stderr)
        return FAILED
    _emit(dumps(decomposition_to_json(d)), args.output)
    return OK


def cmd_construct(args) -> int:
    g = load_graph(args.graph)
    res = construct_coloring(
        g,
        args.epsilon,
        eps_tree=args.eps_tree,
        strategy=args.strategy,
        lp_budget=args.budget,
    )
    if args.trace:
        Path(args.trace).write_text(dumps(res.trace), encoding="utf-8")
    if not res.ok:
        print(f"construction failed: {res.reason}", file=sys.stderr)
        return FAILED
    _emit(dumps(interval_coloring_to_json(res.coloring)), args.output)
    print(f"verified at ambient {res.coloring.ambient} (branch {res.trace['branch']})", file=sys.stderr)
    return OK


def cmd_recolor_demo(args) -> int:
    rng = random.Random(args.seed)
    if not 0 < args.eps_prime < args.eps:
        raise UsageError("need 0 < eps-prime < eps")
    task = random_task(rng, args.delta, args.eps_prime, args.eps)
    res = recolor_tree(task)
    checks = res.checks
    print(f"tree: {task.tree.n} vertices, depth bound d = {res.d}, s = {res.s}")
    print(f"valid coloring: {'OK' if checks['valid'] else 'FAILED'}")
    boundary = checks["root"] and checks["root_edge"] and checks["level0"]
    print(f"boundary conditions: {'OK' if boundary else 'FAILED'}")
    if args.output:
        report = {
            "delta": args.delta,
            "eps": q2s(args.eps),
            "eps_prime": q2s(args.eps_prime),
            "seed": args.seed,
            "X": interval_set_to_json(task.X),
            "Y": interval_set_to_json(task.Y),
            "pi": isometry_to_json(res.pi),
            "coloring": interval_coloring_to_json(res.coloring),
            "checks": checks,
        }
        Path(args.output).write_text(dumps(report), encoding="utf-8")
    return OK if all(checks.values()) else FAILED


def cmd_fixtures(args) -> int:
    for fx in fixtures.all_fixtures():
        chi = "" if fx.chi is None else f"  chi {fx.chi}"
        print(
            f"{fx.name:13s} n {fx.graph.n:3d}  m {fx.graph.m:3d}  Δ {fx.max_degree}"
            f"  girth {_fmt(fx.girth)}  cyc-conn {_fmt(fx.cyclic_connectivity)}{chi}"
        )
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fractotal", description="Exact fractional total colorings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="size, degree, girth and cyclic edge-connectivity")
    s.add_argument("graph")
    s.add_argument("--max-cut", type=int, default=None, help="stop the cyclic-cut search at this size")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("chi", help="fractional total chromatic number with certificate")
    s.add_argument("graph")
    s.add_argument("--mode", choices=["auto", "enumerate", "column-gen"], default="auto")
    s.add_argument("--budget", type=int, default=DEFAULT_ENUMERATION_BUDGET)
    s.add_argument("--certificate", help="write the LP certificate JSON here")
    s.add_argument("--coloring", help="write the optimal interval coloring JSON here")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("verify", help="check an interval coloring or LP certificate")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("decompose", help="ell-decomposition into sub-2-factors")
    s.add_argument("graph")
    s.add_argument("--ell", type=int, default=None, help="defaults to the maximum degree")
    s.add_argument("--node-budget", type=int, default=10**7)
    s.add_argument("--output")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("construct", help="build a verified (Δ+1+ε) coloring")
    s.add_argument("graph")
    s.add_argument("--epsilon", type=_rational, required=True)
    s.add_argument("--eps-tree", type=_rational, default=None)
    s.add_argument("--strategy", choices=["auto", "pipeline", "lp"], default="auto")
    s.add_argument("--budget", type=int, default=DEFAULT_ENUMERATION_BUDGET)
    s.add_argument("--output")
    s.add_argument("--trace", help="write the construction trace JSON here")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("recolor-demo", help="random tree recoloring with boundary checks")
    s.add_argument("--delta", type=int, default=5)
    s.add_argument("--eps", type=_rational, default=s2q("1"))
    s.add_argument("--eps-prime", type=_rational, default=s2q("1/2"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output")
    s.set_defaults(func=cmd_recolor_demo)

    s = sub.add_parser("fixtures", help="list the bundled fixtures")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (ParseError, UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
