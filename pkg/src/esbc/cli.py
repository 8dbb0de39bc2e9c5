"""Command-line driver.

Exit codes: 0 ok, 1 postulate violations or audit falsifications,
2 input errors, 3 construction needs an unrealized model set,
4 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import audit as audit_mod
from .dot import to_dot
from .logic import FormulaSyntaxError, LinearOrder, UnknownAtom, parse_formula
from .operators import (
    BUILDERS,
    KindMismatch,
    MissingState,
    UnknownState,
    apply,
    build,
    dump_table,
    load_orders,
    load_table,
)
from .search import DEFAULT_BUDGET, BudgetExhausted, SearchConfig, count_operators, naive_count
from .space import FormatError, load_space, realizability_report
from .verify import verify_contraction, verify_revision

EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT, EXIT_MISSING, EXIT_BUDGET = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _emit(args, payload, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    space = load_space(_read(args.space))
    report = realizability_report(space)
    _emit(args, report.to_json(space), report.text(space))
    return EXIT_OK


def cmd_build(args) -> int:
    space = load_space(_read(args.space))
    orders = None
    if args.orders_file:
        try:
            doc = json.loads(_read(args.orders_file))
        except json.JSONDecodeError as e:
            raise FormatError(f"orders file: {e.msg}", e.pos) from None
        orders = load_orders(doc, space)
    elif args.order:
        try:
            order = LinearOrder.parse(args.order, space.sig)
        except ValueError as e:
            raise InputError(str(e)) from None
        orders = {s: order for s in space.states}
    try:
        table = build(space, args.kind, orders)
    except ValueError as e:
        raise InputError(str(e)) from None
    except MissingState as e:
        sig = space.sig
        payload = {
            "error": "MissingState",
            "state": e.state,
            "input_models": sig.model_strs(e.input),
            "required_models": sig.model_strs(e.models),
            "all_missing": [sig.model_strs(m) for m in e.missing],
        }
        text = (
            f"cannot build {args.kind}: {e}\n"
            f"unrealized model sets required: {', '.join(sig.show(m) for m in e.missing)}"
        )
        if args.json:
            print(json.dumps(payload, indent=2))
        else:
            print(text, file=sys.stderr)
        return EXIT_MISSING
    _write(dump_table(table), args.output)
    if args.output:
        print(f"wrote {args.kind} table to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    table = load_table(_read(args.table))
    kind = args.kind or table.kind
    fn = verify_revision if kind == "revision" else verify_contraction
    report = fn(table.space, table, collect_all=args.all)
    _emit(args, report.to_json(table.space.sig), report.text(table.space.sig))
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def cmd_apply(args) -> int:
    table = load_table(_read(args.table))
    f = parse_formula(args.formula, table.space.sig)
    target = apply(table, args.state, f)
    _emit(args, {"state": args.state, "formula": args.formula, "result": target}, target)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    table = load_table(_read(args.table))
    _write(to_dot(table), args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    space = load_space(_read(args.space))
    cfg = SearchConfig(args.kind, node_budget=args.budget, count_cap=args.cap)
    res = count_operators(space, cfg)
    payload = {"kind": args.kind, "count": res.count, "exact": res.exact, "nodes": res.nodes_visited}
    text = f"{args.kind} operators: {res.count}{'' if res.exact else ' (capped)'}"
    if args.naive:
        payload["naive_count"] = naive = naive_count(space, args.kind)
        text += f"\nnaive enumeration: {naive}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_audit(args) -> int:
    n = args.atoms
    theorems = audit_mod.audit_theorems(n, args.samples, args.seed, args.budget)
    equiv = audit_mod.audit_equivalences(n, args.samples, args.seed)
    lines = []
    for rec in theorems.records:
        lines.append(json.dumps({"audit": "theorems", **rec}, sort_keys=True))
    for rec in equiv.records:
        lines.append(json.dumps({"audit": "equivalences", **rec}, sort_keys=True))
    counts = []
    if n == 1:
        counts = audit_mod.find_count_asymmetry(1, args.budget)
        sig = audit_mod.audit_signature(1)
        for rec in counts:
            lines.append(json.dumps({"audit": "counts", **rec.to_json(sig)}, sort_keys=True))
    if args.output:
        Path(args.output).write_text("\n".join(lines) + "\n")
    bad = len(theorems.falsifications) + len(equiv.falsifications) + sum(not r.agree for r in counts)
    if args.json:
        print("\n".join(lines))
    else:
        print(f"theorem audit: {len(theorems.records)} spaces, "
              f"{len(theorems.falsifications)} falsifications")
        print(f"equivalence audit: {len(equiv.records)} spaces, "
              f"{len(equiv.falsifications)} falsifications")
        if counts:
            summary = audit_mod.summarize_asymmetry(counts)
            print(f"count scan: {len(counts)} families; "
                  f"{len(summary['more_contraction'])} with more contraction, "
                  f"{len(summary['more_revision'])} with more revision operators")
    return EXIT_OK if bad == 0 else EXIT_VIOLATIONS


# --------------------------------------------------------------------------
# parser


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    p = argparse.ArgumentParser(prog="esbc", description="Realizability of AGM belief change on epistemic spaces.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="realizability report for a space")
    c.add_argument("space")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", parents=[common], help="construct a canonical operator table")
    b.add_argument("space")
    b.add_argument("--kind", required=True, choices=sorted(BUILDERS))
    b.add_argument("--order", help="linear order as comma-separated bitstrings, e.g. 11,10,01,00")
    b.add_argument("--orders-file", help="JSON file with default and per-state orders")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="check the AGM postulates on a table")
    v.add_argument("table")
    v.add_argument("--kind", choices=["revision", "contraction"], help="postulate family to check")
    v.add_argument("--all", action="store_true", help="report every violation, not only the first per postulate")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("apply", parents=[common], help="apply a table to a state and formula")
    a.add_argument("table")
    a.add_argument("--state", required=True)
    a.add_argument("--formula", required=True)
    a.set_defaults(func=cmd_apply)

    au = sub.add_parser("audit", parents=[common], help="brute-force audit of the characterizations")
    au.add_argument("--atoms", type=int, required=True, choices=[1, 2])
    au.add_argument("--samples", type=int, default=100)
    au.add_argument("--seed", type=int, default=0)
    au.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    au.add_argument("-o", "--output", help="write JSON lines here")
    au.set_defaults(func=cmd_audit)

    d = sub.add_parser("export-dot", parents=[common], help="render a table as Graphviz DOT")
    d.add_argument("table")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_export_dot)

    e = sub.add_parser("enumerate", parents=[common], help="count AGM operators on a space")
    e.add_argument("space")
    e.add_argument("--kind", required=True, choices=["revision", "contraction"])
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--cap", type=int)
    e.add_argument("--naive", action="store_true", help="also count by brute force (tiny spaces only)")
    e.set_defaults(func=cmd_enumerate)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except MissingState as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISSING
    except BudgetExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, FormulaSyntaxError, UnknownAtom, UnknownState, KindMismatch, InputError) as e:
        msg = e.args[0] if isinstance(e, UnknownState) else str(e)
        if isinstance(e, UnknownState):
            msg = f"unknown state {msg!r}"
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
