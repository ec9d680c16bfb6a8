"""Command-line front end.

    diracsym verify [suite] [--json] [--seed N] [--tol X]
    diracsym eval "<expr>" [--json]
    diracsym table [--json]
    diracsym solve <signs> <mode> [--json]

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._version import __version__
from .discrete import IntertwinerConstraint, TABLE_EXPECTED, expected_row, operator, solve_intertwiner
from .gammaexpr import NotMonomialError, ParseError, eval_exact, format_canonical, canonical_form, parse
from .report import DEFAULT_TOL, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _matrix_cells(m) -> list:
    return [[str(a) for a in row] for row in m.rows]


def _signs_text(signs) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signs) + ")"


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, tol=args.tol)
    if args.json:
        _emit(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_eval(args) -> int:
    try:
        expr = parse(args.expr)
    except ParseError as exc:
        print(f"{exc.kind} error at offset {exc.offset}: {exc.message}", file=sys.stderr)
        print("  " + args.expr, file=sys.stderr)
        print("  " + " " * exc.offset + "^", file=sys.stderr)
        return EXIT_USAGE
    m = eval_exact(expr)
    try:
        canonical = format_canonical(*canonical_form(m))
    except NotMonomialError:
        canonical = None
    if args.json:
        _emit({"input": args.expr, "canonical": canonical, "matrix": _matrix_cells(m)})
    else:
        print(canonical if canonical is not None else "(no canonical monomial form)")
        print(m.format())
    return EXIT_OK


def _table_rows() -> list:
    rows = []
    for name, (text, anti, signs) in TABLE_EXPECTED.items():
        op = operator(name)
        exp = expected_row(name)
        rows.append(
            {
                "name": name,
                "matrix": op.label(),
                "antilinear": op.antilinear,
                "signs": _signs_text(op.arg_signs),
                "expected_matrix": text,
                "expected_antilinear": anti,
                "expected_signs": _signs_text(signs),
                "match": (op.matrix, op.antilinear, op.arg_signs) == (exp.matrix, exp.antilinear, exp.arg_signs),
            }
        )
    return rows


def cmd_table(args) -> int:
    rows = _table_rows()
    if args.json:
        _emit({"rows": rows})
    else:
        kind = {True: "antilinear", False: "linear"}
        head = f"{'op':<4} {'matrix':<12} {'kind':<11} {'args':<9} | {'expected':<12} {'kind':<11} {'args':<9} match"
        print(head)
        print("-" * len(head))
        for r in rows:
            print(
                f"{r['name']:<4} {r['matrix']:<12} {kind[r['antilinear']]:<11} {r['signs']:<9} | "
                f"{r['expected_matrix']:<12} {kind[r['expected_antilinear']]:<11} {r['expected_signs']:<9} "
                f"{'ok' if r['match'] else 'MISMATCH'}"
            )
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


def cmd_solve(args) -> int:
    try:
        constraint = IntertwinerConstraint.from_string(args.signs, args.mode)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    found = [format_canonical(p, k) for p, k in solve_intertwiner(constraint)]
    if args.json:
        _emit({"signs": args.signs, "mode": args.mode, "solutions": found})
    else:
        print(", ".join(found) if found else "(no solutions)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diracsym", description="Exact gamma-matrix algebra and discrete-symmetry checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="?", default="all", choices=["all", *SUITES])
    v.add_argument("--json", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a gamma expression exactly")
    e.add_argument("expr")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("table", help="print the composite transformation table")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("solve", help="solve U op(g^a) U^-1 = eps_a g^a over phase * basis")
    s.add_argument("signs", help="four characters of +/-, e.g. +---")
    s.add_argument("mode", choices=["plain", "transpose", "conjugate"])
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)
    return parser


def _protect_leading_dash(argv: list) -> list:
    # "-g2" and "----" are operands, not options
    if len(argv) >= 2 and argv[0] in ("eval", "solve") and "--" not in argv:
        rest = argv[1:]
        flags = [a for a in rest if a in ("--json", "-h", "--help")]
        operands = [a for a in rest if a not in flags]
        if any(a.startswith("-") for a in operands):
            return [argv[0], *flags, "--", *operands]
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_protect_leading_dash(argv))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
