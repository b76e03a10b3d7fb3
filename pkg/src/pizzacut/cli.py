"""Command line interface: ``pizzacut <command> ...``.

Exit status 0 on success, 1 on a domain error (invalid instance, failed
precondition, failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arrangement import (arrangement_to_dict, balance, check_anchors, dumps_arrangement,
                          is_bisecting, loads_arrangement)
from .brute import count_bisections, enumerate_bisections
from .homotopy import solve as solve_homotopy
from .instance import (PizzaError, loads_family, dumps_family, pad_to_odd,
                       repair_after_padding, require_valid, validate)
from .ppa_graph import audit
from .reductions import (dumps_necklace_solution, is_necklace_bisection, loads_necklace,
                         necklace_to_pizza, pizza_to_necklace)
from .render import render_svg
from .separated import alpha_pizza_cut


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _err(msg: str) -> None:
    print(f"pizzacut: {msg}", file=sys.stderr)


def solve_brute(family):
    padded, record = pad_to_odd(family)
    sols = enumerate_bisections(padded)
    if not sols:
        raise PizzaError("no bisecting arrangement found")
    return repair_after_padding(padded, record, sols[0])


def cmd_validate(args) -> int:
    family = loads_family(_read(args.instance))
    report = validate(family)
    if args.json:
        print(json.dumps({"ok": report.ok, "issues": [
            {"kind": i.kind, "refs": [list(r) for r in i.refs], "message": i.message}
            for i in report.issues]}, indent=2))
    elif report.ok:
        print("valid")
    else:
        _err(report.summary())
    return 0 if report.ok else 1


def cmd_solve(args) -> int:
    family = loads_family(_read(args.instance))
    require_valid(family)
    trace = [] if args.trace else None
    if args.method == "homotopy":
        arr = solve_homotopy(family, seed=args.seed, trace=trace)
    elif args.method == "brute":
        arr = solve_brute(family)
    else:
        arr = alpha_pizza_cut(family, [len(s) // 2 for s in family.sets])
    if not is_bisecting(family, arr):
        raise PizzaError("solver output failed verification")
    if args.trace:
        Path(args.trace).write_text("".join(json.dumps(r) + "\n" for r in trace))
    _emit(dumps_arrangement(arr), args.output)
    return 0


def cmd_verify(args) -> int:
    family = loads_family(_read(args.instance))
    arr = loads_arrangement(_read(args.solution))
    check_anchors(family, arr)
    report = balance(family, arr)
    ok = len(arr) == family.n and is_bisecting(family, arr)
    if args.json:
        print(json.dumps({"ok": ok, "per_set": [
            {"label": lab, "plus": b.count_plus, "minus": b.count_minus, "on": b.count_on}
            for lab, b in zip(family.labels, report)]}, indent=2))
    else:
        for lab, b in zip(family.labels, report):
            print(f"{lab}: +{b.count_plus} -{b.count_minus} on={b.count_on}")
        print("bisecting" if ok else "NOT bisecting")
    return 0 if ok else 1


def cmd_count(args) -> int:
    family = loads_family(_read(args.instance))
    require_valid(family)
    count = count_bisections(family)
    print(json.dumps({"count": count}) if args.json else count)
    return 0


def cmd_enumerate(args) -> int:
    family = loads_family(_read(args.instance))
    require_valid(family)
    sols = enumerate_bisections(family)
    doc = {"version": 1, "count": len(sols),
           "arrangements": [arrangement_to_dict(a)["lines"] for a in sols]}
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return 0


def cmd_alpha(args) -> int:
    family = loads_family(_read(args.instance))
    try:
        k = [int(x) for x in args.k.split(",")]
    except ValueError:
        raise PizzaError(f"--k must be comma-separated integers, got {args.k!r}")
    arr = alpha_pizza_cut(family, k)
    _emit(dumps_arrangement(arr), args.output)
    return 0


def cmd_audit(args) -> int:
    family = loads_family(_read(args.instance))
    require_valid(family)
    report = audit(family, seed=args.seed)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"events: {report.events}  vertices: {report.vertices}  "
              f"source degree: {report.source_degree}  solutions: {report.solutions}")
        print("degrees: " + ", ".join(f"{d}: {c}" for d, c in sorted(report.degree_histogram.items())))
        for name, ok in report.checks.items():
            print(f"{'PASS' if ok else 'FAIL'} {name}")
        for f in report.failures:
            _err(f)
    return 0 if report.ok else 1


def cmd_reduce(args) -> int:
    inst = loads_necklace(_read(args.necklace))
    _emit(dumps_family(necklace_to_pizza(inst)), args.output)
    return 0


def cmd_lift(args) -> int:
    inst = loads_necklace(_read(args.necklace))
    arr = loads_arrangement(_read(args.solution))
    sol = pizza_to_necklace(inst, arr)
    if not is_necklace_bisection(inst, sol):
        raise PizzaError("lifted necklace solution failed verification")
    _emit(dumps_necklace_solution(sol), args.output)
    return 0


def cmd_render(args) -> int:
    family = loads_family(_read(args.instance))
    arr = loads_arrangement(_read(args.solution))
    check_anchors(family, arr)
    if not arr.lines:
        raise PizzaError("nothing to render: the arrangement has no lines")
    Path(args.svg).write_text(render_svg(family, arr))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pizzacut", description="Exact discrete pizza cutting.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, *positional):
        sp = sub.add_parser(name, help=help)
        for pos in positional:
            sp.add_argument(pos)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check an instance", "instance")
    sp.add_argument("--json", action="store_true")

    sp = add("solve", cmd_solve, "find a bisecting arrangement", "instance")
    sp.add_argument("--method", choices=("homotopy", "brute", "alpha"), default="homotopy")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trace", metavar="FILE", help="write the event log (JSON lines)")
    sp.add_argument("-o", "--output")

    sp = add("verify", cmd_verify, "check a solution", "instance", "solution")
    sp.add_argument("--json", action="store_true")

    sp = add("count", cmd_count, "count bisecting arrangements (odd set sizes)", "instance")
    sp.add_argument("--json", action="store_true")

    sp = add("enumerate", cmd_enumerate, "list all bisecting arrangements", "instance")
    sp.add_argument("-o", "--output")

    sp = add("alpha-cut", cmd_alpha, "alpha cut of a well-separated family", "instance")
    sp.add_argument("--k", required=True, help="comma-separated targets, one per set")
    sp.add_argument("-o", "--output")

    sp = add("audit-graph", cmd_audit, "audit the parity graph", "instance")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")

    sp = add("reduce-necklace", cmd_reduce, "embed a necklace instance", "necklace")
    sp.add_argument("-o", "--output")

    sp = add("lift-necklace", cmd_lift, "turn a pizza solution into necklace cuts",
             "necklace", "solution")
    sp.add_argument("-o", "--output")

    sp = add("render", cmd_render, "draw an instance and a solution", "instance", "solution")
    sp.add_argument("--svg", required=True, metavar="FILE")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PizzaError as exc:
        _err(str(exc))
        return 1
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _err(f"cannot read input: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
