"""Command-line surface: batch, non-interactive, machine-readable.

Exit codes: 0 = pass/success, 1 = mathematical failure (mismatch or odd
witness), 2 = usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from etaparity import __version__
from etaparity.analysis import (
    Progression,
    QuadForm,
    check_progression,
    density,
    p2_even_check,
    pentagonal_form,
    primeclass_base,
    representable_residues,
    residue_complement,
    search_progressions,
    triangular_form,
)
from etaparity.expr import ParseError, canonical_string, evaluate, parse
from etaparity.identities import builtin_catalog, load_catalog, verify_all
from etaparity.series import BitSeries, dumps, eta_power

__all__ = ["main", "build_parser"]


def _emit(args, doc: dict, lines: list[str]) -> None:
    """Write the report: text lines or one structured document."""
    if args.format == "structured":
        out = json.dumps(doc, indent=2) + "\n"
    else:
        out = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _doc(args, command: str, inputs: dict, verdict: str, **extra) -> dict:
    return {
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
        "verdict": verdict,
        **extra,
    }


def _dump_series(args, series: BitSeries) -> None:
    if getattr(args, "dump", None):
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(dumps(series) + "\n")


def _cmd_coeffs(args) -> int:
    expr = parse(args.expr)
    if args.upto < 0:
        raise ValueError("--upto must be nonnegative")
    if not 0 <= getattr(args, "start", 0) <= args.upto:
        raise ValueError("--from must lie in 0..upto")
    series = evaluate(expr, args.upto + 1)
    _dump_series(args, series)
    if args.odd_indices:
        values = [n for n in series.odd_indices() if n >= args.start]
    else:
        values = [series[n] for n in range(args.start, args.upto + 1)]
    inputs = {
        "expr": canonical_string(expr),
        "from": args.start,
        "upto": args.upto,
        "odd_indices": args.odd_indices,
    }
    key = "odd_indices" if args.odd_indices else "coefficients"
    _emit(args, _doc(args, "coeffs", inputs, "ok", **{key: values}),
          [",".join(str(v) for v in values)])
    return 0


def _cmd_check(args) -> int:
    expr = parse(args.expr)
    pr = Progression(args.A, args.B)
    series = evaluate(expr, args.nmax + 1)
    _dump_series(args, series)
    res = check_progression(series, pr, args.nmax)
    inputs = {"expr": canonical_string(expr), "A": args.A, "B": args.B,
              "n_max": args.nmax}
    doc = _doc(args, "check", inputs, "pass" if res.passed else "fail",
               checked=res.checked, witness=res.witness)
    label = f"{args.A}n+{args.B}"
    if res.passed:
        lines = [f"pass: {label} all even over indices <= {args.nmax} "
                 f"(checked {res.checked})"]
    else:
        lines = [f"fail: odd coefficient at index {res.witness} on {label} "
                 f"(checked up to n_max {args.nmax})"]
    _emit(args, doc, lines)
    return 0 if res.passed else 1


def _cmd_search(args) -> int:
    expr = parse(args.expr)
    series = evaluate(expr, args.upto + 1)
    _dump_series(args, series)
    found = search_progressions(series, args.amax, args.support,
                                dedup=not args.no_dedup, threads=args.threads)
    even_a = sum(1 for f in found if f.A % 2 == 0)
    inputs = {"expr": canonical_string(expr), "A_max": args.amax,
              "min_support": args.support, "upto": args.upto}
    doc = _doc(args, "search", inputs, "ok",
               progressions=[[f.A, f.B] for f in found],
               modulus_parity={"even_A": even_a, "odd_A": len(found) - even_a})
    lines = [f"{f.A}n+{f.B}" for f in found]
    lines.append(f"found {len(found)} even progression(s) with A <= {args.amax}, "
                 f"support >= {args.support}, indices <= {args.upto} "
                 f"(A even: {even_a}, A odd: {len(found) - even_a})")
    _emit(args, doc, lines)
    return 0


def _cmd_density(args) -> int:
    expr = parse(args.expr)
    series = evaluate(expr, args.upto + 1)
    _dump_series(args, series)
    est = density(series, args.upto)
    inputs = {"expr": canonical_string(expr), "upto": args.upto}
    doc = _doc(args, "density", inputs, "ok",
               odd_count=est.odd_count,
               fraction=f"{est.value.numerator}/{est.value.denominator}",
               decimal=est.decimal)
    _emit(args, doc, [f"odd density {est.decimal} "
                      f"({est.odd_count}/{args.upto + 1} indices 0..{args.upto})"])
    return 0


def _cmd_verify(args) -> int:
    cases = load_catalog(args.catalog) if args.catalog else builtin_catalog()
    if args.case:
        wanted = set(args.case)
        cases = [c for c in cases if c.name in wanted]
        missing = wanted - {c.name for c in cases}
        if missing:
            raise ValueError(f"unknown case name(s): {sorted(missing)}")
    results = verify_all(cases, args.upto, threads=args.threads)
    failed = [r for r in results if not r.passed]
    inputs = {"catalog": args.catalog or "builtin", "N": args.upto,
              "cases": len(cases), "threads": args.threads}
    doc = _doc(args, "verify", inputs, "pass" if not failed else "fail",
               results=[{"name": r.name, "n": r.n, "passed": r.passed,
                         "first_mismatch": r.first_mismatch} for r in results])
    lines = [str(r) for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} cases passed "
                 f"at N={args.upto}")
    _emit(args, doc, lines)
    return 0 if not failed else 1


def _cmd_p2even(args) -> int:
    t, p = args.t, args.p
    derived = args.r is None
    applicable = None
    if derived:
        r, applicable = primeclass_base(t, p)
    else:
        r = args.r
    length = args.length or max(20 * p * p, min(100 * p * p, 10**6))
    series = eta_power(1, t, length)
    report = p2_even_check(t, p, r, series, threads=args.threads)
    inputs = {"t": t, "p": p, "r": r, "r_derived": derived, "length": length}
    if applicable is not None:
        inputs["applicable"] = applicable
    doc = _doc(args, "p2even", inputs, "pass" if report.passed else "fail",
               min_support=min(report.checked_per_k), witness=report.witness)
    origin = "derived" if derived else "given"
    head = (f"t={t} p={p} r={r} ({origin}"
            + (f", applicable={applicable}" if applicable is not None else "")
            + f", length {length})")
    if report.passed:
        lines = [head, f"pass: c_{t}({p * p}n+{p}k+{r}) even for k=1..{p - 1} "
                       f"(support >= {min(report.checked_per_k)})"]
    else:
        lines = [head, f"fail: odd coefficient at index {report.witness}"]
    _emit(args, doc, lines)
    return 0 if report.passed else 1


def _parse_form(spec: str) -> QuadForm:
    """Form spec: `pent[:t]`, `tri[:t]`, or explicit `c,d` rationals."""
    kind, _, rest = spec.partition(":")
    if kind in ("pent", "tri"):
        t = int(rest) if rest else 1
        return pentagonal_form(t) if kind == "pent" else triangular_form(t)
    c, sep, d = spec.partition(",")
    if not sep:
        raise ValueError(f"bad form spec {spec!r}: expected pent[:t], tri[:t], or c,d")
    return QuadForm(Fraction(c), Fraction(d))


def _cmd_residues(args) -> int:
    forms = [_parse_form(s) for s in args.form]
    m = args.modulus
    if args.union:
        mask_val = 0
        for form in forms:
            mask_val |= representable_residues([form], m)
    else:
        mask_val = representable_residues(forms, m)
    rep = [r for r in range(m) if (mask_val >> r) & 1]
    comp = residue_complement(mask_val, m)
    inputs = {"forms": args.form, "modulus": m,
              "combine": "union" if args.union else "sum"}
    doc = _doc(args, "residues", inputs, "ok", representable=rep, complement=comp)
    lines = [
        "representable: " + (",".join(map(str, rep)) if rep else "(none)"),
        "complement: " + (",".join(map(str, comp)) if comp else "(none)"),
    ]
    _emit(args, doc, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etaparity",
        description="Eta-quotient coefficients mod 2: computation, congruence "
                    "checking, progression search, and residue analysis.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, dump: bool = False) -> None:
        p.add_argument("--format", choices=("text", "structured"), default="text",
                       help="output format (default text)")
        p.add_argument("--out", metavar="PATH", help="write the report to a file")
        if dump:
            p.add_argument("--dump", metavar="PATH",
                           help="dump the computed series in hex form")

    p = sub.add_parser("coeffs", help="print coefficients of an expression")
    p.add_argument("expr")
    p.add_argument("--upto", type=int, default=32,
                   help="highest index, inclusive (default 32)")
    p.add_argument("--from", dest="start", type=int, default=0,
                   help="lowest index, inclusive (default 0)")
    p.add_argument("--odd-indices", action="store_true",
                   help="print indices of odd coefficients instead of bits")
    common(p, dump=True)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("check", help="verify a progression is all even")
    p.add_argument("expr")
    p.add_argument("A", type=int, help="progression modulus")
    p.add_argument("B", type=int, help="progression residue, 0 <= B < A")
    p.add_argument("--nmax", type=int, default=100_000,
                   help="highest index checked (default 100000)")
    common(p, dump=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("search", help="search for all-even progressions")
    p.add_argument("expr")
    p.add_argument("--amax", type=int, default=10,
                   help="largest modulus searched (default 10)")
    p.add_argument("--support", type=int, default=50,
                   help="minimum indices per class (default 50)")
    p.add_argument("--upto", type=int, default=100_000,
                   help="highest index used (default 100000)")
    p.add_argument("--no-dedup", action="store_true",
                   help="also report progressions implied by a divisor modulus")
    p.add_argument("--threads", type=int, default=1)
    common(p, dump=True)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("density", help="odd-coefficient density over a prefix")
    p.add_argument("expr")
    p.add_argument("--upto", type=int, default=100_000,
                   help="highest index, inclusive (default 100000)")
    common(p, dump=True)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("verify", help="run an identity catalog")
    p.add_argument("catalog", nargs="?",
                   help="catalog file path (default: built-in catalog)")
    p.add_argument("--builtin", action="store_true",
                   help="use the built-in catalog (the default)")
    p.add_argument("--upto", type=int, default=10_000,
                   help="verification length N (default 10000)")
    p.add_argument("--case", action="append",
                   help="verify only the named case (repeatable)")
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("p2even", help="check the p^2-even property of f1^t")
    p.add_argument("t", type=int)
    p.add_argument("p", type=int)
    p.add_argument("r", type=int, nargs="?",
                   help="base; derived from (t, p) when omitted")
    p.add_argument("--length", type=int,
                   help="series length (default 100 p^2, capped at 10^6)")
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_p2even)

    p = sub.add_parser("residues",
                       help="residues attained by quadratic exponent forms")
    p.add_argument("--form", action="append", required=True,
                   help="pent[:t], tri[:t], or c,d rationals (repeatable)")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("--union", action="store_true",
                   help="union the forms' residue sets instead of summing them")
    common(p)
    p.set_defaults(func=_cmd_residues)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
