"""Command-line surface: digits, bounds, estimate, verify, sweep.

Exit codes: 0 success (and all verify certificates PASS), 1 verify FAIL,
2 argument parse error, 3 domain error, 4 budget/non-convergence error,
5 precision abstention, 6 I/O error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .bounds import good_bracket, jarnik_bracket, solve_implicit_s
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DomainError,
    NonConvergenceError,
    PrecisionInsufficientError,
)
from .estimator import (
    AlphabetSpec,
    DimensionEstimate,
    estimate_dim_collocation,
    estimate_dim_words,
    sandwich_check,
)
from .expansion import check_determinant, convergents, digits_of, evaluate
from .schemas import CSV_HEADER
from .verify import (
    verify_covering,
    verify_good_children,
    verify_growth,
    verify_mass_distribution,
    verify_sufficiency,
    verify_telescoping,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+/\d+$")


def _rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise argparse.ArgumentTypeError(
            f"expected an exact rational 'num/den', got {text!r}"
        )
    return Fraction(text)


def _digit_range(text: str) -> tuple[int, int]:
    match = re.match(r"^(\d+)\.\.(\d+)$", text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected a range 'a..b', got {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _format_cell(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".15g")
    return str(value)


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nexpansion",
        description="N-expansion continued fractions: exact arithmetic, "
        "dimension bounds, estimators, and proof-inequality verifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_digits = sub.add_parser("digits", help="expand a rational and show convergents")
    p_digits.add_argument("--N", type=int, required=True, dest="n")
    p_digits.add_argument("--x", type=_rational, required=True)
    p_digits.add_argument("--max", type=int, required=True, dest="max_digits")
    p_digits.add_argument("--format", choices=("text", "json"), default="text")

    p_bounds = sub.add_parser("bounds", help="closed-form dimension bounds")
    bounds_sub = p_bounds.add_subparsers(dest="family", required=True)
    p_jarnik = bounds_sub.add_parser("jarnik", help="bounded-digit bracket")
    p_jarnik.add_argument("--N", type=int, required=True, dest="n")
    p_jarnik.add_argument("--M", type=int, required=True, dest="m")
    p_jarnik.add_argument("--format", choices=("text", "json"), default="text")
    p_good = bounds_sub.add_parser("good", help="large-digit bracket around 1/2")
    p_good.add_argument("--N", type=int, required=True, dest="n")
    p_good.add_argument("--alpha", type=float, required=True)
    p_good.add_argument("--solve-implicit", action="store_true")
    p_good.add_argument("--tol", type=float, default=1e-12)
    p_good.add_argument("--format", choices=("text", "json"), default="text")

    p_est = sub.add_parser("estimate", help="numerical dimension estimate")
    p_est.add_argument("--N", type=int, required=True, dest="n")
    p_est.add_argument("--min-digit", type=int, required=True)
    p_est.add_argument("--max-digit", type=int, required=True)
    p_est.add_argument("--method", choices=("collocation", "words", "both"),
                       default="collocation")
    p_est.add_argument("--tol", type=float, default=1e-8)
    p_est.add_argument("--grid", type=int, default=32)
    p_est.add_argument("--depth", type=int, default=None)
    p_est.add_argument("--budget", type=int, default=10_000_000)
    p_est.add_argument("--sandwich", action="store_true")
    p_est.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="proof-condition certificates (JSON)")
    p_verify.add_argument("--suite", required=True,
                          choices=("all", "growth", "mass", "cover", "suff",
                                   "good", "telescope"))
    p_verify.add_argument("--N", type=int, required=True, dest="n")
    p_verify.add_argument("--M", type=int, dest="m")
    p_verify.add_argument("--s", type=float, default=None)
    p_verify.add_argument("--depth", type=int, default=None)
    p_verify.add_argument("--max-digit", type=int, default=None)
    p_verify.add_argument("--alpha", type=int, default=None)
    p_verify.add_argument("--cutoff", type=int, default=100_000)
    p_verify.add_argument("--m-end", type=int, default=None)

    p_sweep = sub.add_parser("sweep", help="parameter sweep to CSV")
    p_sweep.add_argument("--family", required=True,
                         choices=("jarnik", "good", "estimate"))
    p_sweep.add_argument("--N", type=int, required=True, dest="n")
    p_sweep.add_argument("--M-range", type=_digit_range, dest="m_range")
    p_sweep.add_argument("--alpha-list", type=_float_list)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--method", choices=("collocation", "words"),
                         default="collocation")
    p_sweep.add_argument("--grid", type=int, default=32)
    p_sweep.add_argument("--tol", type=float, default=1e-8)
    p_sweep.add_argument("--budget", type=int, default=10_000_000)
    return parser


def _cmd_digits(args) -> int:
    word = digits_of(args.n, args.x, args.max_digits)
    pairs = convergents(word)
    det_ok = check_determinant(pairs, args.n)
    value = evaluate(word) if len(word) else None
    doc = {
        "N": args.n,
        "x": str(args.x),
        "digits": list(word.digits),
        "terminated": word.terminated,
        "value": str(value),
        "convergents": [{"index": c.index, "p": c.p, "q": c.q} for c in pairs],
        "determinant_ok": det_ok,
    }
    lines = [
        f"digits: {list(word.digits)} ({'terminated' if word.terminated else 'truncated'})",
        f"value of truncation: {value}",
        "convergents (k, p, q):",
    ]
    lines += [f"  {c.index:3d} {c.p} {c.q}" for c in pairs]
    lines.append(f"determinant check: {'ok' if det_ok else 'VIOLATED'}")
    _emit(args, doc, lines)
    return 0


def _cmd_bounds(args) -> int:
    if args.family == "jarnik":
        bracket = jarnik_bracket(args.n, args.m)
        doc = {
            "family": "jarnik",
            "N": args.n,
            "M": args.m,
            "raw_lower": bracket.raw_lower,
            "raw_upper": bracket.raw_upper,
            "lower": bracket.lower,
            "upper": bracket.upper,
            "lower_valid": bracket.lower_valid,
            "upper_valid": bracket.upper_valid,
        }
    else:
        bracket = good_bracket(args.n, args.alpha)
        implicit = None
        if args.solve_implicit:
            implicit = solve_implicit_s(args.n, args.alpha, args.tol)
        doc = {
            "family": "good",
            "N": args.n,
            "alpha": args.alpha,
            "raw_lower": bracket.raw_lower,
            "raw_upper": bracket.raw_upper,
            "lower": bracket.lower,
            "upper": bracket.upper,
            "lower_valid": bracket.lower_valid,
            "upper_valid": bracket.upper_valid,
            "implicit_s": implicit,
        }
    lines = [
        f"{doc['family']} bracket (N={args.n}, "
        f"{'M=' + str(args.m) if args.family == 'jarnik' else 'alpha=' + str(args.alpha)})",
        f"  raw lower: {bracket.raw_lower:.12f}  (valid: {bracket.lower_valid})",
        f"  raw upper: {bracket.raw_upper:.12f}  (valid: {bracket.upper_valid})",
        f"  clamped:   [{bracket.lower:.12f}, {bracket.upper:.12f}]",
    ]
    if doc.get("implicit_s") is not None:
        lines.append(f"  implicit covering root s: {doc['implicit_s']:.12f}")
    _emit(args, doc, lines)
    return 0


def _estimates_for(args, spec: AlphabetSpec) -> list[DimensionEstimate]:
    out = []
    if args.method in ("collocation", "both"):
        out.append(estimate_dim_collocation(spec, grid=args.grid, s_tol=args.tol))
    if args.method in ("words", "both"):
        out.append(
            estimate_dim_words(spec, depth=args.depth, s_tol=args.tol,
                               budget=args.budget)
        )
    return out


def _cmd_estimate(args) -> int:
    spec = AlphabetSpec(args.n, args.min_digit, args.max_digit)
    estimates = _estimates_for(args, spec)
    sandwich = None
    if args.sandwich:
        if args.min_digit != args.n:
            raise DomainError(
                "--sandwich compares against the bracket for digit windows "
                "starting at the expansion parameter (min-digit == N)"
            )
        report = sandwich_check(args.n, args.max_digit, estimates)
        sandwich = {
            "lower": report.lower,
            "upper": report.upper,
            "lower_valid": report.lower_valid,
            "upper_valid": report.upper_valid,
            "lower_applicable": report.lower_applicable,
            "checks": list(report.checks),
            "passed": report.passed,
        }
    doc = {
        "N": args.n,
        "min_digit": args.min_digit,
        "max_digit": args.max_digit,
        "estimates": [
            {
                "method": e.method.name,
                "value": e.value,
                "tolerance": e.tolerance,
                "diagnostics": e.diagnostics,
            }
            for e in estimates
        ],
        "sandwich": sandwich,
    }
    lines = [f"alphabet {{{args.min_digit}..{args.max_digit}}}, N={args.n}:"]
    for e in estimates:
        lines.append(
            f"  {e.method.value}: {e.value:.10f} (tol {e.tolerance:.2e}) {e.diagnostics}"
        )
    if sandwich is not None:
        lines.append(
            f"  sandwich [{sandwich['lower']:.6f}, {sandwich['upper']:.6f}]: "
            f"{'PASS' if sandwich['passed'] else 'FAIL'}"
        )
    _emit(args, doc, lines)
    return 0


def _verify_certificates(args) -> list:
    n = args.n
    certs = []
    suite = args.suite
    if suite in ("all", "growth"):
        depth = args.depth if args.depth is not None else 6
        max_digit = args.max_digit if args.max_digit is not None else n + 4
        certs.append(verify_growth(n, depth, max_digit))
    if suite in ("all", "mass", "cover", "suff") and args.m is None:
        if suite != "all":
            raise DomainError(f"suite {suite!r} requires --M")
    if args.m is not None:
        depth = args.depth if args.depth is not None else 4
        if suite in ("all", "mass"):
            s = args.s if args.s is not None else jarnik_bracket(n, args.m).raw_lower
            certs.append(verify_mass_distribution(n, args.m, s, depth))
        if suite in ("all", "cover"):
            s = args.s if args.s is not None else jarnik_bracket(n, args.m).raw_upper
            certs.append(verify_covering(n, args.m, s, depth))
        if suite in ("all", "suff"):
            s = args.s if args.s is not None else jarnik_bracket(n, args.m).raw_lower
            certs.append(verify_sufficiency(n, args.m, s, depth))
    if suite in ("all", "telescope"):
        depth = min(args.depth if args.depth is not None else 3, 3)
        max_digit = args.max_digit if args.max_digit is not None else n + 3
        m_end = args.m_end if args.m_end is not None else n + 10
        certs.append(verify_telescoping(n, depth, max_digit, m_end))
    if suite == "good" or (suite == "all" and args.alpha is not None):
        if args.alpha is None:
            raise DomainError("suite 'good' requires --alpha")
        s = args.s if args.s is not None else good_bracket(n, args.alpha).raw_upper
        depth = args.depth if args.depth is not None else 2
        certs.append(verify_good_children(n, args.alpha, s, depth, args.cutoff))
    return certs


def _cmd_verify(args) -> int:
    certs = _verify_certificates(args)
    all_passed = all(c.passed for c in certs)
    doc = {
        "suite": args.suite,
        "certificates": [c.to_json_dict() for c in certs],
        "all_passed": all_passed,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0 if all_passed else 1


def _sweep_rows(args) -> list[dict]:
    rows = []
    if args.family in ("jarnik", "estimate"):
        if args.m_range is None:
            raise DomainError(f"family {args.family!r} requires --M-range")
        lo, hi = args.m_range
        params = list(range(lo, hi + 1))
    else:
        if args.alpha_list is None:
            raise DomainError("family 'good' requires --alpha-list")
        params = sorted(args.alpha_list)
    for param in params:
        row = dict.fromkeys(CSV_HEADER, "")
        row["family"] = args.family
        row["N"] = args.n
        row["param"] = float(param) if args.family == "good" else param
        if args.family == "jarnik":
            bracket = jarnik_bracket(args.n, int(param))
        elif args.family == "good":
            bracket = good_bracket(args.n, param)
        else:
            spec = AlphabetSpec(args.n, args.n, int(param))
            if args.method == "collocation":
                est = estimate_dim_collocation(spec, grid=args.grid, s_tol=args.tol)
            else:
                est = estimate_dim_words(spec, s_tol=args.tol, budget=args.budget)
            row["estimate"] = est.value
            row["method"] = est.method.value
            row["tolerance"] = est.tolerance
            rows.append(row)
            continue
        row["lower"] = bracket.raw_lower
        row["upper"] = bracket.raw_upper
        row["valid_lower"] = bracket.lower_valid
        row["valid_upper"] = bracket.upper_valid
        rows.append(row)
    return rows


def _cmd_sweep(args) -> int:
    rows = _sweep_rows(args)
    try:
        with open(args.out, "w", encoding="ascii", newline="") as handle:
            handle.write(",".join(CSV_HEADER) + "\n")
            for row in rows:
                handle.write(",".join(_format_cell(row[c]) for c in CSV_HEADER) + "\n")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 6
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


_COMMANDS = {
    "digits": _cmd_digits,
    "bounds": _cmd_bounds,
    "estimate": _cmd_estimate,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PrecisionInsufficientError as exc:
        print(f"abstained: {exc}", file=sys.stderr)
        return 5
    except (BudgetExceededError, NonConvergenceError, CapExceededError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 6


if __name__ == "__main__":
    sys.exit(main())
