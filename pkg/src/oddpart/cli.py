"""Command-line interface.

    oddpart verify [--suite NAME ...] [--max-n N] [--max-k K]
    oddpart qtable --max-n 20 [--max-k 4] [--source brute|closed-form] [--format csv]
    oddpart bound --family Rk --k 4 --x 1/4
    oddpart enclose --target product --x 1/4 --terms 30
    oddpart report --x 1/4

Exit codes: 0 success, 1 a verification or constant check failed, 2 usage or
domain error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import bounds as B
from . import identities as I
from . import partitions as P
from .series import (
    GOLDEN,
    UNIT,
    DomainError,
    as_point,
    format_decimal,
    format_rational,
    parse_rational,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
QTABLE_GUARD = 100


class UsageError(Exception):
    pass


# -- argument helpers -------------------------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        value = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if value <= 0:
        raise argparse.ArgumentTypeError(f"x must be positive, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text}")
    return value


def parse_subset(text: str) -> tuple[int, ...]:
    """``"3,4,5"``, ``"<=32"`` (all prime powers up to 32) or ``"none"``."""
    text = text.strip()
    if text in ("", "none"):
        return ()
    if text.startswith("<="):
        return tuple(P.prime_powers_up_to(int(text[2:])))
    values = tuple(int(v) for v in text.split(","))
    for v in values:
        if v < 3 or P.prime_power_base(v) is None:
            raise UsageError(f"{v} is not a prime power > 2")
    return values


def _emit(rows: list[dict], fmt: str, columns: Sequence[str], out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for row in rows:
            out.write("  ".join(str(row.get(c, "")) for c in columns) + "\n")


# -- verify -----------------------------------------------------------------

def cmd_verify(args, out) -> int:
    names = list(I.SUITES) if "all" in args.suite else args.suite
    if args.max_n is not None and args.max_n < 1:
        raise UsageError("--max-n must be >= 1 (empty range)")
    if args.max_k is not None and args.max_k < 0:
        raise UsageError("--max-k must be >= 0")
    reports = [I.run_suite(n, args.max_n, args.max_k, guard=not args.no_guard) for n in names]
    if args.format == "json":
        json.dump([r.as_dict() for r in reports], out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "status", "grid", "checked", "n", "k", "lhs", "rhs", "note"])
        for r in reports:
            c = r.counterexample
            w.writerow([r.suite, r.status, r.grid_text(), r.checked,
                        *(("", "", "", "", "") if c is None else (c.n, c.k, c.lhs, c.rhs, c.note))])
    else:
        for r in reports:
            line = f"{r.status}  {r.suite:<20} {r.grid_text()}  checked={r.checked}"
            if r.detail:
                line += f"  ({r.detail})"
            out.write(line + "\n")
            if r.counterexample is not None:
                c = r.counterexample
                out.write(f"      first counterexample: n={c.n} k={c.k} lhs={c.lhs} rhs={c.rhs} {c.note}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- qtable -----------------------------------------------------------------

def qtable_rows(max_n: int, max_k: int, source: str) -> list[dict]:
    tab = I.tables(max_n)
    table = P.build_qtable(max_n, source, max_k)
    rows = []
    for row in table:
        rows.append({
            "n": row.n,
            "q": tab.q[row.n],
            "F": tab.fib[row.n],
            "Q": {str(k): v for k, v in sorted(row.counts.items()) if k <= max_k},
            "provenance": source,
        })
    return rows


def qtable_columns(max_k: int) -> list[str]:
    return ["n", "q", "F"] + [f"Q{k}" for k in range(1, max_k + 1)]


def _flatten(row: dict, max_k: int) -> dict:
    flat = {"n": row["n"], "q": row["q"], "F": row["F"]}
    for k in range(1, max_k + 1):
        flat[f"Q{k}"] = row["Q"].get(str(k), 0)
    return flat


def cmd_qtable(args, out) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    if args.source == P.BRUTE and args.max_n > QTABLE_GUARD and not args.allow_large:
        raise UsageError(f"--max-n {args.max_n} exceeds the brute-force guard {QTABLE_GUARD}; "
                         "pass --allow-large or use --source closed-form")
    try:
        rows = qtable_rows(args.max_n, args.max_k, args.source)
    except P.NotAPrimePower as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        json.dump(rows, out, separators=(",", ":"))
        out.write("\n")
        return EXIT_OK
    flat = [_flatten(r, args.max_k) for r in rows]
    cols = qtable_columns(args.max_k)
    if args.format == "text":
        mark = "b" if args.source == P.BRUTE else "c"
        for f in flat:
            for k in range(1, args.max_k + 1):
                f[f"Q{k}"] = f"{f[f'Q{k}']}{mark}"
        out.write("  ".join(cols) + f"   (suffix {mark}: {args.source})\n")
    _emit(flat, args.format, cols, out)
    return EXIT_OK


def parse_qtable(text: str, fmt: str) -> list[dict]:
    """Inverse of the csv/json qtable dumps (integers only)."""
    if fmt == "json":
        return [{"n": r["n"], "q": r["q"], "F": r["F"], "Q": {int(k): v for k, v in r["Q"].items() if v}}
                for r in json.loads(text)]
    rows = []
    for r in csv.DictReader(io.StringIO(text)):
        qs = {int(c[1:]): int(v) for c, v in r.items() if c.startswith("Q") and int(v)}
        rows.append({"n": int(r["n"]), "q": int(r["q"]), "F": int(r["F"]), "Q": qs})
    return rows


# -- bound / enclose --------------------------------------------------------

FAMILIES = ("corollary1", "corollary2", "Ak", "Bk", "Rk", "th6", "th7", "theorem3-pointwise")


def evaluate_family(family: str, x: Fraction, k: int, subset, terms: int) -> B.BoundResult:
    if family == "corollary1":
        return B.prime_power_lower(x, subset)
    if family == "corollary2":
        return B.odd_divisor_sum_upper(x, subset)
    if family == "Ak":
        return B.lower_sequence(x, k)
    if family == "Bk":
        return B.upper_sequence(x, k)
    if family == "Rk":
        return B.window_upper(x, k)
    if family == "th6":
        return B.two_weight_upper(x, k)
    if family == "th7":
        return B.three_weight_upper(x, k)
    if family == "theorem3-pointwise":
        return B.pointwise_upper(x, k, terms)
    raise UsageError(f"unknown family {family!r}")


def _bound_text(r: B.BoundResult, digits: int) -> str:
    rounding = "up" if r.side == "upper" else "down"
    shape = r.target
    tail = f" + {format_rational(r.sum_coefficient)}*L(x)" if r.sum_coefficient else ""
    rel = "<" if r.side == "upper" else ">"
    return (f"{format_rational(r.constant)}\n"
            f"  ~ {format_decimal(r.constant, digits, rounding)} (rounded {rounding})\n"
            f"  {shape} {rel} constant{tail}   [{r.provenance}]")


def cmd_bound(args, out) -> int:
    needs_k = args.family not in ("corollary1", "corollary2")
    if needs_k and args.k is None:
        raise UsageError(f"--k is required for family {args.family}")
    k = args.k if args.k is not None else 0
    if args.family in ("Ak", "Bk", "theorem3-pointwise") and k < 1:
        raise UsageError("--k must be >= 1 for this family")
    r = evaluate_family(args.family, args.x, k, args.subset, args.terms)
    if args.format == "json":
        json.dump({"family": args.family, "k": args.k, "x": format_rational(args.x),
                   "constant": format_rational(r.constant), "side": r.side, "target": r.target,
                   "sum_coefficient": format_rational(r.sum_coefficient), "provenance": r.provenance},
                  out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "k", "x", "constant", "side", "target", "sum_coefficient"])
        w.writerow([args.family, "" if args.k is None else args.k, format_rational(args.x),
                    format_rational(r.constant), r.side, r.target, format_rational(r.sum_coefficient)])
    else:
        out.write(_bound_text(r, args.digits) + "\n")
    return EXIT_OK


def cmd_enclose(args, out) -> int:
    x = as_point(args.x, UNIT)
    if args.target == "odd-sum":
        e = B.enclose_odd_divisor_sum(x, args.terms)
        lo, hi, note = e.lo, e.hi, ""
    else:
        try:
            e = B.enclose_distinct_product(x, args.terms)
            lo, hi, note = e.lo, e.hi, ""
        except B.TailDiverges as exc:
            lo, hi, note = B.product_partial(x, args.terms), None, str(exc)
    if args.format == "json":
        json.dump({"target": args.target, "x": format_rational(x), "terms": args.terms,
                   "lo": format_rational(lo), "hi": None if hi is None else format_rational(hi),
                   "width": None if hi is None else format_rational(hi - lo),
                   "status": "inconclusive" if hi is None else "ok", "note": note}, out, indent=2)
        out.write("\n")
        return EXIT_OK
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["target", "x", "terms", "lo", "hi", "width"])
        w.writerow([args.target, format_rational(x), args.terms, format_rational(lo),
                    "" if hi is None else format_rational(hi), "" if hi is None else format_rational(hi - lo)])
        return EXIT_OK
    out.write(f"lo={format_rational(lo)}\n")
    if hi is None:
        out.write(f"hi=inconclusive ({note})\n")
        return EXIT_OK
    out.write(f"hi={format_rational(hi)}\n")
    out.write(f"[{format_decimal(lo, args.digits, 'down')}, {format_decimal(hi, args.digits, 'up')}]"
              f"  width <= {format_decimal(hi - lo, args.digits + 10, 'up')}\n")
    return EXIT_OK


# -- report -----------------------------------------------------------------

def build_report(x: Fraction, terms: int, digits: int) -> tuple[list[str], bool]:
    """Lines of the constants report and whether every comparable line passed."""
    x = as_point(x, GOLDEN)
    lines = [f"x = {format_rational(x)}    terms = {terms}", ""]
    ok = True
    lines.append("constants (exact; PASS means equal to the published value)")
    checks = B.constant_checks(x)
    for c in checks:
        status = {True: "PASS", False: "FAIL", None: "----"}[c.passed]
        ok &= c.passed is not False
        exp = "" if c.expected is None else f"  expected {format_rational(c.expected)}"
        lines.append(f"  {status}  {c.name:<18} {format_rational(c.computed)}{exp}")
    lines.append("")

    s = B.enclose_odd_divisor_sum(x, terms)
    lines.append(f"odd-divisor sum   L(x) in [{format_decimal(s.lo, digits, 'down')}, "
                 f"{format_decimal(s.hi, digits, 'up')}]")
    try:
        prod = B.enclose_distinct_product(x, terms)
    except B.TailDiverges as exc:
        prod = None
        lines.append(f"product           inconclusive ({exc})")
    else:
        lines.append(f"product           P(x) in [{format_decimal(prod.lo, digits, 'down')}, "
                     f"{format_decimal(prod.hi, digits, 'up')}]")
    lines.append("")

    if x == B.QUARTER:
        v = B.sixteen_term_lower(x)
        passed = v >= B.SIXTEEN_TERM_LOWER
        ok &= passed
        lines.append(f"  {'PASS' if passed else 'FAIL'}  16-term lower bound {format_decimal(v, 12, 'down')}"
                     f" >= {format_decimal(B.SIXTEEN_TERM_LOWER, 8, 'down')}")
        lines.append("")

    if prod is not None:
        lines.append("bounds against the enclosures (worst-case ends)")
        for c in checks:
            for label, const in (("computed", c.computed), ("published", c.expected)):
                if const is None or (label == "published" and const == c.computed):
                    continue
                weak, strong = B.certified_bound(c, s, const)
                if c.target == B.PRODUCT:
                    good = strong > prod.hi if c.side == "upper" else strong < prod.lo
                else:
                    good = strong > s.hi
                ok &= good
                rel = ">" if c.side == "upper" else "<"
                lines.append(f"  {'PASS' if good else 'FAIL'}  {c.name:<18} ({label}) {rel} "
                             f"{'product' if c.target == B.PRODUCT else 'L(x)'}")
        lines.append("")
        lines.append("sandwich lower_sequence + L < P < upper_sequence + (k-1)/k L")
        for k in range(1, B.MAX_UPPER_K + 1):
            sw = B.sandwich(x, k, terms)
            ok &= sw.status != B.FAIL
            lines.append(f"  {sw.status.upper():<12} k={k}  [{format_decimal(sw.lower, digits, 'down')}, "
                         f"{format_decimal(sw.upper, digits, 'up')}]")
        lines.append("")
    lines.append("analytic inequalities are certified here only at this rational point;")
    lines.append("the coefficientwise statements are covered by `oddpart verify`.")
    return lines, ok


def cmd_report(args, out) -> int:
    lines, ok = build_report(args.x, args.terms, args.digits)
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- entry ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddpart", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    v = sub.add_parser("verify", help="run finite verification suites")
    v.add_argument("--suite", action="append", choices=("all", *I.SUITES), default=None)
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--max-k", type=int, default=None)
    v.add_argument("--no-guard", action="store_true", help="lift the brute-force bounds on n")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("qtable", help="dump q(n), F_n and Q_k(n)")
    q.add_argument("--max-n", type=int, default=20)
    q.add_argument("--max-k", type=_positive_int, default=4)
    q.add_argument("--source", choices=(P.BRUTE, P.CLOSED), default=P.BRUTE)
    q.add_argument("--allow-large", action="store_true")
    fmt(q)
    q.set_defaults(func=cmd_qtable)

    b = sub.add_parser("bound", help="evaluate one bound constant")
    b.add_argument("--family", choices=FAMILIES, required=True)
    b.add_argument("--k", type=_nonneg_int, default=None)
    b.add_argument("--x", type=_rational_arg, required=True)
    b.add_argument("--subset", type=str, default="3", help="prime powers: '3,4', '<=32' or 'none'")
    b.add_argument("--terms", type=_nonneg_int, default=30)
    b.add_argument("--digits", type=_positive_int, default=12)
    fmt(b)
    b.set_defaults(func=cmd_bound)

    e = sub.add_parser("enclose", help="certified enclosure of the product or the odd-divisor sum")
    e.add_argument("--target", choices=("product", "odd-sum"), default="product")
    e.add_argument("--x", type=_rational_arg, required=True)
    e.add_argument("--terms", type=_nonneg_int, default=30)
    e.add_argument("--digits", type=_positive_int, default=18)
    fmt(e)
    e.set_defaults(func=cmd_enclose)

    r = sub.add_parser("report", help="recompute every published constant and check it")
    r.add_argument("--x", type=_rational_arg, default=Fraction(1, 4))
    r.add_argument("--terms", type=_nonneg_int, default=30)
    r.add_argument("--digits", type=_positive_int, default=12)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify" and args.suite is None:
        args.suite = ["all"]
    try:
        if args.command == "bound":
            args.subset = parse_subset(args.subset)
        return args.func(args, out)
    except (UsageError, DomainError, B.UnsupportedK, P.NotAPrimePower, P.UnsupportedCase) as exc:
        err.write(f"oddpart {args.command}: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        err.write(f"oddpart {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
