"""Command-line front end.

Exit codes: 0 when the run reproduces the expected mathematics (claims
falsified, bounds and equivalence hold, band holds), 1 when it does not or
precision ran out, 2 for usage and resource errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from typing import Sequence

from . import agmpi, bineuclid, claimlab, multable
from .hiprec import MIN_DIGITS, make_context
from .report import decimal_string, dumps, envelope

EXIT_OK, EXIT_UNEXPECTED, EXIT_USAGE = 0, 1, 2
DIGITS_ENV = "ERRORLAB_DIGITS"
_SIZE_UNITS = {"": 1, "b": 1, "kib": 2**10, "mib": 2**20, "gib": 2**30,
               "kb": 10**3, "mb": 10**6, "gb": 10**9}


class UsageError(Exception):
    pass


def parse_size(text: str) -> int:
    m = re.fullmatch(r"\s*(\d+)\s*([a-zA-Z]*)\s*", text)
    if not m or m.group(2).lower() not in _SIZE_UNITS:
        raise argparse.ArgumentTypeError(f"bad size {text!r}; use e.g. 256MiB or 4GiB")
    return int(m.group(1)) * _SIZE_UNITS[m.group(2).lower()]


def _default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    return int(raw) if raw else 40


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=_default_digits(),
                        help=f"decimal digits (default 40, or ${DIGITS_ENV})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", default="-", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="errorlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("claims", parents=[common], help="falsify the prime-zeta claims")
    p.add_argument("--claim", choices=[c.value for c in claimlab.ClaimId], default="vm-theorem-1")
    p.add_argument("--method", choices=[m.value for m in claimlab.Method] + ["all"], default="all")
    p.add_argument("--s", dest="s_values", action="append", help="s for the numeric method (repeatable)")
    p.add_argument("--nmax", type=int, default=claimlab.DEFAULT_N_MAX, help="coefficient table size")
    p.add_argument("--depth", type=int, default=claimlab.DEFAULT_DEPTH, help="nested radical depth")

    p = sub.add_parser("agm", parents=[common], help="GL1/BB4 traces and their equivalence")
    p.add_argument("--algorithm", choices=("gl1", "bb4", "equivalence"), default="equivalence")
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("bineuclid", parents=[common], help="closed forms of the binary-Euclid series")
    p.add_argument("--x", dest="xs", action="append", help="evaluation point in (0,1) (repeatable)")

    p = sub.add_parser("multable", parents=[common], help="distinct products M(2^n)")
    p.add_argument("--nmin", type=int, default=None, help="smallest exponent n (default min(5, nmax))")
    p.add_argument("--nmax", type=int, default=14, help="largest exponent n")
    p.add_argument("--memory", type=parse_size, default=multable.DEFAULT_MEMORY_BUDGET)
    p.add_argument("--one-based", action="store_true", help="also count the 1..N table")
    p.add_argument("--dump-bitmap", metavar="PATH", help="write the bitmap of the largest N")
    return parser


# ---------------------------------------------------------------------------

def _context(digits: int, minimum: int = MIN_DIGITS):
    if digits < minimum:
        raise UsageError(f"--digits must be >= {minimum}")
    return make_context(digits)


def _fmt(value, digits: int = 12) -> str:
    if hasattr(value, "_mpf_"):
        return decimal_string(value, digits)
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def cmd_claims(args) -> tuple[int, dict, list[str], dict]:
    claim = claimlab.ClaimId(args.claim)
    applicable = claimlab.APPLICABLE_METHODS[claim]
    if args.method == "all":
        methods = list(applicable)
    else:
        method = claimlab.Method(args.method)
        if method not in applicable:
            raise UsageError(
                f"method {method.value} does not apply to {claim.value}; "
                f"choose from {', '.join(m.value for m in applicable)}"
            )
        methods = [method]
    if args.nmax < 30:
        raise UsageError("--nmax must be >= 30")
    ctx = _context(args.digits)
    s_values = args.s_values or ["2"]

    reports = []
    for method in methods:
        if method is claimlab.Method.COEFFICIENTS:
            if claim is claimlab.ClaimId.VM_THEOREM_2:
                reports.append(claimlab.run_squaring_reduction(args.nmax))
            else:
                reports.append(claimlab.run_method1(args.nmax, claim))
        elif method is claimlab.Method.NUMERIC:
            reports.append(claimlab.run_method2(ctx, s_values, claim))
        elif method is claimlab.Method.SINGULARITY:
            reports.append(claimlab.run_method3(ctx, claim=claim))
        else:
            reports.append(claimlab.run_nested_radical_check(ctx, s_values[0], args.depth, args.nmax))

    lines = []
    for r in reports:
        lines.append(f"{r.claim.value} / {r.method.value}: {r.verdict.value}")
        w = r.witness
        if r.method is claimlab.Method.COEFFICIENTS and "index" in w:
            lines.append(f"  first mismatch n={w['index']}: lhs a_n={w['lhs_coeff']}, rhs a_n={w['rhs_coeff']}")
        elif r.method is claimlab.Method.NUMERIC:
            lines.append(f"  s={_fmt(w['s'])}  lhs={_fmt(w['lhs'], 10)}  rhs={_fmt(w['rhs'], 10)}  "
                         f"gap={_fmt(w['gap'], 8)}")
        elif r.method is claimlab.Method.SINGULARITY:
            for row in w["scan"]:
                lines.append(f"  eps={_fmt(row['epsilon'], 3)}  lhs/eps={_fmt(row['lhs_over_eps'], 8)}  "
                             f"rhs/log(eps)^2={_fmt(row['rhs_over_log2'], 8)}")
            lines.append(f"  spread of rhs/log(eps)^2: {_fmt(w['rhs_ratio_spread'], 4)}")
        elif r.method is claimlab.Method.NESTED_RADICAL:
            lines.append(f"  s={_fmt(w['s'])}  radical={_fmt(w['nested_radical'], 10)}  "
                         f"P(s)={_fmt(w['prime_zeta'], 10)}  gap={_fmt(w['gap'], 6)}")
    ok = all(r.falsified for r in reports)
    config = {"claim": claim, "methods": methods, "digits": args.digits, "s": s_values,
              "nmax": args.nmax, "depth": args.depth}
    return (EXIT_OK if ok else EXIT_UNEXPECTED), {"reports": reports}, lines, config


def _trace_summary(trace: agmpi.AgmTrace) -> dict:
    checks = agmpi.check_bounds(trace)
    orders = agmpi.convergence_orders(trace)
    return {
        "algorithm": trace.algorithm,
        "digits_used": trace.digits_used,
        "iterates": [
            {"n": c.n, "error": decimal_string(c.error, 20), "bound": decimal_string(c.bound, 20),
             "resolved": c.resolved, "passed": c.passed}
            for c in checks
        ],
        "lg_ratio": orders["lg_ratio"],
        "order": orders["order"],
    }


def cmd_agm(args) -> tuple[int, dict, list[str], dict]:
    if args.nmax < 1:
        raise UsageError("--nmax must be >= 1")
    ctx = _context(args.digits, agmpi.MIN_AGM_DIGITS)
    config = {"algorithm": args.algorithm, "nmax": args.nmax, "digits": args.digits}
    lines = []
    if args.algorithm == "equivalence":
        try:
            worst, deviations = agmpi.check_equivalence(ctx, args.nmax)
        except agmpi.PrecisionShortfall as exc:
            return EXIT_UNEXPECTED, {"error": str(exc)}, [f"precision shortfall: {exc}"], config
        for n, d in enumerate(deviations):
            lines.append(f"  n={n}  |pi''_n - pi'_2n| = {_fmt(d, 5)}")
        lines.append(f"max deviation {_fmt(worst, 5)} (digits {args.digits})")
        payload = {"max_deviation": worst, "deviations": deviations}
        return EXIT_OK, payload, lines, config

    run = agmpi.gl1_run if args.algorithm == "gl1" else agmpi.bb4_run
    try:
        trace = run(ctx, args.nmax)
    except agmpi.PrecisionShortfall as exc:
        return EXIT_UNEXPECTED, {"error": str(exc)}, [f"precision shortfall: {exc}"], config
    summary = _trace_summary(trace)
    for row in summary["iterates"]:
        state = "pass" if row["passed"] else ("FAIL" if row["resolved"] else "unresolved")
        lines.append(f"  n={row['n']}  error={row['error']}  bound={row['bound']}  {state}")
    decreasing = all(b < a for a, b in zip(trace.errors, trace.errors[1:]))
    ok = all(row["passed"] for row in summary["iterates"]) and decreasing
    if not all(row["resolved"] for row in summary["iterates"]):
        lines.append("precision shortfall: raise --digits to resolve every bound")
    return (EXIT_OK if ok else EXIT_UNEXPECTED), summary, lines, config


def cmd_bineuclid(args) -> tuple[int, dict, list[str], dict]:
    xs = args.xs or list(bineuclid.DEFAULT_GRID)
    for x in xs:
        try:
            value = float(x)
        except ValueError:
            raise UsageError(f"--x {x!r} is not a number") from None
        if not 0 < value < 1:
            raise UsageError(f"--x {x} outside (0, 1)")
    config = {"digits": args.digits, "x": xs}
    if args.digits < 1:
        raise UsageError("--digits must be positive")

    if args.digits < MIN_DIGITS:
        rows = bineuclid.low_precision_scan(args.digits, xs)
        lines = [f"low-precision rerun at {args.digits} digits"]
        for r in rows:
            lines.append(f"  x={_fmt(r.x, 6)}  f_direct - closed_form = {_fmt(r.discrepancy, 4)}")
        detected = any(r.detected for r in rows)
        lines.append("discrepancy detected" if detected else "no discrepancy detectable at this precision")
        payload = {"mode": "low-precision", "rows": rows, "detected": detected}
        return (EXIT_UNEXPECTED if detected else EXIT_OK), payload, lines, config

    ctx = _context(args.digits)
    rows = bineuclid.discrepancy_scan(ctx, xs)
    threshold = 10 * ctx.tolerance
    corrected = [abs(bineuclid.f_closed_correct(ctx, r.x) - bineuclid.f_direct(ctx, r.x)) for r in rows]
    lines = [f"{'x':>10}  {'f_direct - closed':>24}  {'x P(lg x)':>24}"]
    for r in rows:
        lines.append(f"{_fmt(r.x, 6):>10}  {_fmt(r.discrepancy, 12):>24}  {_fmt(r.predicted, 12):>24}")
    max_ratio = max(abs(r.discrepancy) / r.x for r in rows)
    lines.append(f"max |discrepancy|/x = {_fmt(max_ratio, 6)} (bound {bineuclid.PERIODIC_BOUND})")
    ok = (
        all(c < threshold for c in corrected)
        and all(r.residual < threshold for r in rows)
        and all(r.detected == (abs(r.predicted) > threshold) for r in rows)
        and max_ratio < bineuclid.PERIODIC_BOUND
    )
    payload = {"mode": "high-precision", "rows": rows, "corrected_form_error": corrected,
               "max_discrepancy_over_x": max_ratio}
    return (EXIT_OK if ok else EXIT_UNEXPECTED), payload, lines, config


def cmd_multable(args) -> tuple[int, dict, list[str], dict, dict]:
    nmin = min(5, args.nmax) if args.nmin is None else args.nmin
    if nmin < 1 or args.nmax < nmin:
        raise UsageError("need 1 <= nmin <= nmax")
    if 2**args.nmax > multable.MAX_N:
        raise UsageError(f"N = 2^{args.nmax} exceeds the supported maximum {multable.MAX_N}")
    if args.memory < multable.MIN_SEGMENT:
        raise UsageError(f"--memory must be at least {multable.MIN_SEGMENT} bytes")
    config = {"nmin": nmin, "nmax": args.nmax, "memory": args.memory, "one_based": args.one_based}

    results, timing, one_based = [], {}, {}
    for n in range(nmin, args.nmax + 1):
        r = multable.count_distinct_products(2**n, args.memory)
        results.append(r)
        timing[str(n)] = r.elapsed
        if args.one_based:
            one_based[str(n)] = multable.count_products_one_based(2**n, args.memory)
    if args.dump_bitmap:
        with open(args.dump_bitmap, "wb") as fh:
            multable.dump_bitmap(2**args.nmax, fh, args.memory)
    report = multable.conjecture_report(results)
    if one_based:
        report["one_based"] = one_based

    lines = [f"{'n':>3} {'M(N)':>14} {'M/M*':>9} {'lower bd':>14} {'M lglgN/N^2':>12} {'exponent':>9}"]
    for row in report["rows"]:
        lines.append(
            f"{row['n']:>3} {row['M']:>14} {_fmt(row['ratio']):>9} {row['lower_bound']:>14.1f} "
            f"{_fmt(row['conjecture_quantity']):>12} {_fmt(row['exponent_estimate']):>9}"
        )
    lines.append(f"Erdős exponent c = {report['erdos_exponent']:.6f}; {report['conjecture_status']}")
    band_rows = [row for row in report["rows"] if 5 <= row["n"] <= 17]
    ok = all(row["above_lower_bound"] for row in report["rows"]) and all(row["in_band"] for row in band_rows)
    return (EXIT_OK if ok else EXIT_UNEXPECTED), report, lines, config, timing


COMMANDS = {"claims": cmd_claims, "agm": cmd_agm, "bineuclid": cmd_bineuclid, "multable": cmd_multable}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code, payload, lines, config, *extra = COMMANDS[args.subcommand](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"errorlab {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MemoryError, OverflowError) as exc:
        print(f"errorlab {args.subcommand}: resource error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    timing = dict(extra[0]) if extra else {}
    timing["total"] = time.perf_counter() - start
    status = "expected" if code == EXIT_OK else "unexpected"

    if args.format == "json":
        digits = max(args.digits, 1)
        text = dumps(envelope(args.subcommand, config, payload, status, digits, timing)) + "\n"
    else:
        text = "\n".join(lines + [f"status: {status}"]) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
