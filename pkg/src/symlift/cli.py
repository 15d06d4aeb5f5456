"""Command-line interface.

Exit codes: 0 success, 1 verification or audit-expectation failure, 2 lift
obstruction, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from itertools import product
from math import comb

from . import io
from .core import LABELS, classify
from .errors import ClassificationAmbiguity, InputMismatch, LiftObstruction
from .finitetop import FiniteTopology, audit, audit_all, build_quotients
from .finitetop.audit import REGISTRY, default_workers
from .lifting import LiftOptions, lift_region, verify
from .partitions import (count_piece_points, enumerate_pieces, jvector_of, sim_classes)

EXIT_OK, EXIT_CHECK, EXIT_OBSTRUCTION, EXIT_INPUT = 0, 1, 2, 3
COUNT_BOUND = 10 ** 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _eps(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"eps must be finite and >= 0, got {text}")
    return value


def _emit(args, text_lines, doc):
    """Write ``doc`` to ``--out``; print JSON or text summary on stdout."""
    payload = io.dumps(doc)
    if args.out:
        io.write_text(payload, args.out)
    if args.json or (doc.get("kind") == "lift" and not args.out):
        sys.stdout.write(payload)
    else:
        sys.stdout.write("".join(line + "\n" for line in text_lines))


# -- subcommands ----------------------------------------------------------------

def cmd_partitions(args) -> int:
    table = sim_classes(args.m)
    rows = []
    for k, cls in enumerate(table.classes):
        for tau in cls:
            j = jvector_of(tau)
            rows.append({"alpha": list(tau.alpha), "parts": list(tau.parts),
                         "n_parts": tau.n_parts, "class": k,
                         "jvector": {"j0": j.j0, "parts": list(j.parts)}})
    doc = {"version": io.VERSION, "kind": "partitions", "m": args.m,
           "partitions": rows,
           "classes": [{"n_parts": cls[0].n_parts, "members": [list(t.parts) for t in cls]}
                       for cls in table.classes],
           "M": table.M, "m_alpha": list(table.m_alpha)}
    lines = [f"{'parts':<24} {'class':>5}  j-vector"]
    for r in rows:
        parts = " ".join(map(str, r["parts"]))
        lines.append(f"{parts:<24} {r['class']:>5}  ({r['jvector']['j0']}; "
                     f"{' '.join(map(str, r['jvector']['parts']))})")
    lines.append(f"M = {table.M}")
    lines.append("m_alpha = " + " ".join(map(str, table.m_alpha)))
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_audit(args) -> int:
    if args.lemma == "all":
        if not 1 <= args.n <= 4:
            raise InputMismatch(f"n must be in 1..4, got {args.n}")
        reports = audit_all(args.n)
    else:
        if args.lemma not in REGISTRY:
            raise InputMismatch(f"unknown lemma {args.lemma!r}; known: {', '.join(REGISTRY)}")
        try:
            reports = [audit(args.lemma, args.n)]
        except ValueError as exc:
            raise InputMismatch(str(exc)) from exc
    checks = [{"name": r.lemma, "verdict": "pass" if r.as_expected else "fail",
               "detail": f"{r.verdict} (expected {r.expected}) over "
                         f"{r.universe['cases']} cases"} for r in reports]
    doc = {"version": io.VERSION, "kind": "audit", "n_max": args.n,
           "reports": [r.to_json() for r in reports], "checks": checks}
    lines = [f"{r.lemma:<56} {r.verdict:<6} expected {r.expected:<6} "
             f"{'ok' if r.as_expected else 'UNEXPECTED'}" for r in reports]
    _emit(args, lines, doc)
    return EXIT_OK if all(r.as_expected for r in reports) else EXIT_CHECK


def cmd_lift(args) -> int:
    region = io.load_region(args.region, args.eps)
    opts = LiftOptions(seed_policy=args.seed_policy, tie=args.tie)
    try:
        result = lift_region(region, opts)
    except LiftObstruction as exc:
        doc = io.lift_to_json(region, None, status="obstructed",
                              error=_jsonable(exc.diagnostics(), region))
        _emit(args, [f"obstructed: {exc}"], doc)
        return EXIT_OBSTRUCTION
    report = verify(region, result.lift)
    status = "ok" if report.ok else "failed"
    doc = io.lift_to_json(region, result.lift, result=result, checks=report.checks,
                          status=status)
    d = result.diagnostics
    lines = [f"status {status}", f"segments {d['segments']}", f"events {d['events']}",
             f"passing nodes {len(d['passing_nodes'])}",
             f"max step displacement {d['max_step_displacement']!r}"]
    lines += [f"{c['name']}: {c['verdict']}" for c in report.checks]
    _emit(args, lines, doc)
    return EXIT_OK if report.ok else EXIT_CHECK


def _jsonable(diag, region):
    out = dict(diag)
    if "tuples" in out:
        out["tuples"] = [[io.point_to_json(p, region.domain) for p in t] for t in out["tuples"]]
    for key in ("expected", "found"):
        if key in out:
            out[key] = [io.point_to_json(p, region.domain) for p in out[key]]
    for key in ("square", "edge"):
        if key in out:
            out[key] = [list(region.grid_index(v)) for v in out[key]]
    return out


def cmd_verify(args) -> int:
    region = io.load_region(args.region, args.eps)
    lift = io.load_lift(args.lift, region)
    report = verify(region, lift)
    doc = {"version": io.VERSION, "kind": "verify", "checks": report.checks,
           "values": report.values}
    lines = [f"{c['name']}: {c['verdict']}" + (f" ({c['detail']})" if c["detail"] else "")
             for c in report.checks]
    _emit(args, lines, doc)
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_count(args) -> int:
    q, m = args.q, args.m
    if q ** m > COUNT_BOUND or m > 10:
        raise InputMismatch(f"q^m = {q ** m} exceeds {COUNT_BOUND} (or m > 10)")
    pieces = sorted(enumerate_pieces(m), key=lambda p: (-p.n_blocks, p.blocks))
    formula = {p: count_piece_points(q, p) for p in pieces}
    observed = Counter(classify(t, 0.0, LABELS) for t in product(range(q), repeat=m))
    quot = build_quotients(FiniteTopology.discrete(q), m, check=False)
    sp_formula = comb(q + m - 1, m)
    f_formula = sum(comb(q, k) for k in range(1, m + 1))
    checks = [
        {"name": "piece-counts", "verdict": "pass" if all(
            formula[p] == observed.get(p, 0) for p in pieces) and sum(formula.values()) == q ** m
            else "fail", "detail": f"sum {sum(formula.values())} of {q ** m}"},
        {"name": "sp-size", "verdict": "pass" if quot.sp_space.size == sp_formula else "fail",
         "detail": f"brute force {quot.sp_space.size}, binomial {sp_formula}"},
        {"name": "f-size", "verdict": "pass" if quot.f_space.size == f_formula else "fail",
         "detail": f"brute force {quot.f_space.size}, subset sum {f_formula}"},
    ]
    doc = {"version": io.VERSION, "kind": "count", "q": q, "m": m, "product": q ** m,
           "pieces": [{"blocks": p.to_json(), "points": formula[p]} for p in pieces],
           "sp": quot.sp_space.size, "f": quot.f_space.size, "checks": checks}
    lines = [f"|X^m| = {q ** m}",
             "pieces " + " ".join(str(formula[p]) for p in pieces),
             f"|SP_m| = {quot.sp_space.size}",
             f"|F_m| = {quot.f_space.size}"]
    lines += [f"{c['name']}: {c['verdict']}" for c in checks]
    _emit(args, lines, doc)
    return EXIT_OK if all(c["verdict"] == "pass" for c in checks) else EXIT_CHECK


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symlift", description="Symmetric-product quotients and lifting.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="print JSON on stdout")

    p = sub.add_parser("partitions", help="partitions of m and their part-count classes")
    p.add_argument("m", type=_positive_int)
    common(p)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("audit", help="sweep registered statements over finite spaces")
    p.add_argument("lemma", help="lemma id or 'all'")
    p.add_argument("n", type=_positive_int, help="largest space size")
    common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("lift", help="lift a sampled region")
    p.add_argument("region", help="region JSON file, or - for stdin")
    p.add_argument("--seed-policy", choices=["canonical"], default="canonical")
    p.add_argument("--tie", choices=["lex"], default="lex")
    p.add_argument("--eps", type=_eps, help="override the region's eps")
    common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="check a lift against its region")
    p.add_argument("region")
    p.add_argument("lift")
    p.add_argument("--eps", type=_eps)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="cardinalities of X^m, its pieces and quotients")
    p.add_argument("q", type=_positive_int)
    p.add_argument("m", type=_positive_int)
    common(p)
    p.set_defaults(func=cmd_count)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        default_workers()
        args = parser.parse_args(argv)
        if args.command == "partitions" and args.m > 30:
            raise InputMismatch(f"m must be <= 30, got {args.m}")
        return args.func(args)
    except (UsageError, InputMismatch, ClassificationAmbiguity, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
