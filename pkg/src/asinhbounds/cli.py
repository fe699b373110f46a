"""Command line front end.  Every subcommand writes CSV.

Exit codes: 0 success, 1 a verification or certificate check failed,
2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .analysis import certify_enclosure, find_minimum, midpoint_approx, zhu_sharp_constant
from .core import DomainWindow, f_theta, lower_bound, upper_bound
from .errors import DomainError
from .oracle import X_MIN, asinh_ext
from .verify import (
    CLAIMS,
    Counterexample,
    ScanReport,
    find_lower_violation,
    sample_points,
    scan_inequality,
    scan_monotonicity,
    scan_oppenheim,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 100_000

THETAS_INCREASING = (-0.9, -0.5, 0.0, 1.0, 2.0)
THETAS_INTERIOR = (2.5, 3.0, 10.0, 100.0)
WINDOWS = (0.1, 1.0, 10.0, 100.0)
THETAS_MONOTONE = (-5.0, -1.0, -0.7, -0.3, 0.0, 1.0, 2.0)
THETAS_DIP = (2.1, 3.0)


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _write(rows: Iterable[Sequence], header: Sequence[str], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


# -- table ------------------------------------------------------------------

TABLE_HEADER = ("x", "asinh_oracle", "lower", "upper", "midpoint", "abs_err_midpoint", "rel_gap")


def table_points(r: float, points: int) -> np.ndarray:
    """``points`` log-spaced abscissae in ``(r 1e-6, r]``, ending exactly at ``r``."""
    start = max(r * 1e-6, X_MIN)
    exponents = np.arange(1, points + 1) / points
    x = start * (r / start) ** exponents
    x[-1] = r
    return x


def cmd_table(theta: float, r: float, points: int) -> list[tuple]:
    window = DomainWindow(r)
    x = table_points(window.r, points)
    asinh = asinh_ext(x)
    asinh_r = asinh_ext(window.r)
    lo = np.atleast_1d(lower_bound(theta, x))
    up = np.atleast_1d(upper_bound(theta, window, x, asinh_r))
    cert = certify_enclosure(theta, window)
    mid = np.atleast_1d(midpoint_approx(cert, x))
    abs_err = np.abs((asinh - mid).to_float())
    oracle = asinh.to_float()
    rel_gap = (up - lo) / oracle
    return list(zip(x, oracle, lo, up, mid, abs_err, rel_gap))


# -- sharp constant / minimum -------------------------------------------------


def cmd_sharp_constant(r: float) -> list[tuple]:
    return [(DomainWindow(r).r, zhu_sharp_constant(r))]


MINIMUM_HEADER = ("theta", "x0", "f_min", "floor", "residual", "iterations")


def cmd_minimum(theta: float) -> list[tuple]:
    rep = find_minimum(theta)
    return [(rep.theta, rep.x0, rep.f_min, rep.floor, rep.residual, rep.iterations)]


# -- verify -----------------------------------------------------------------

VERIFY_HEADER = (
    "claim_id", "theta", "r", "samples", "seed", "violations", "worst_margin_ulps",
    "expected", "passed", "cx_x", "cx_theta", "cx_lhs", "cx_rhs",
)


@dataclass(frozen=True)
class SuiteEntry:
    claim_id: str
    theta: float
    r: float


def default_suite() -> list[SuiteEntry]:
    entries = []
    for theta in THETAS_INCREASING:
        for r in WINDOWS:
            entries.append(SuiteEntry("sharp-lower", theta, r))
            entries.append(SuiteEntry("sharp-upper", theta, r))
    for theta in THETAS_INTERIOR:
        for r in WINDOWS:
            entries.append(SuiteEntry("floor-lower", theta, r))
            entries.append(SuiteEntry("max-upper", theta, r))
    for a in (-0.5, 0.0, 2.0):
        for r in (1.0, 10.0):
            entries.append(SuiteEntry("shifted-lower", a, r))
    for r in WINDOWS:
        entries.append(SuiteEntry("shifted-upper", 0.0, r))
        entries.append(SuiteEntry("shifted-upper-subsharp", 0.0, r))
    for theta in (0.0, 2.0, 3.0):
        for r in (1.0, 10.0):
            entries.append(SuiteEntry("hyperbolic", theta, r))
    for theta in THETAS_MONOTONE:
        entries.append(SuiteEntry("monotone", theta, 1e6))
    for theta in THETAS_DIP:
        entries.append(SuiteEntry("dip-below", theta, 0.0))
    return entries


SUITE_CLAIMS = sorted(set(CLAIMS) | {"hyperbolic", "monotone", "dip-below"})


def _expect_hold(claim_id: str) -> bool:
    if claim_id in CLAIMS:
        return CLAIMS[claim_id].expect_hold
    # "dip-below" tests the naive bound f_theta >= 1 + theta, which must fail
    return claim_id != "dip-below"


def run_entry(entry: SuiteEntry, samples: int, seed: int) -> ScanReport:
    if entry.claim_id == "hyperbolic":
        return scan_oppenheim(entry.theta, entry.r, samples, seed)
    if entry.claim_id == "monotone":
        return scan_monotonicity(entry.theta, count=10_000)
    if entry.claim_id == "dip-below":
        # the naive claim f_theta(x) >= 1 + theta, witnessed false near the minimiser
        x = find_lower_violation(entry.theta)
        if x is None:
            return ScanReport("dip-below", entry.theta, 0.0, 1, 0, 0.0, None, seed)
        naive = 1.0 + entry.theta
        f = float(f_theta(entry.theta, x))
        margin = (f - naive) / np.spacing(naive)
        return ScanReport("dip-below", entry.theta, 0.0, 1, 1, margin, Counterexample(x, entry.theta, naive, f), seed)
    return scan_inequality(entry.claim_id, entry.theta, entry.r, samples, seed)


def report_row(rep: ScanReport) -> tuple:
    expect_hold = _expect_hold(rep.claim_id)
    passed = (rep.violations == 0) == expect_hold
    cx = rep.first_counterexample
    return (
        rep.claim_id, rep.theta, rep.r, rep.samples, rep.seed, rep.violations, rep.worst_margin,
        "hold" if expect_hold else "fail", passed,
        *(cx if cx is not None else (None, None, None, None)),
    )


def cmd_verify(claim: Optional[str], theta: Optional[float], r: Optional[float], samples: int, seed: int) -> list[tuple]:
    entries = default_suite()
    if claim is not None:
        entries = [e for e in entries if e.claim_id == claim] or [SuiteEntry(claim, 0.0, 1.0)]
        if theta is not None or r is not None:
            base = entries[0]
            entries = [SuiteEntry(claim, base.theta if theta is None else theta, base.r if r is None else r)]
    return [report_row(run_entry(e, samples, seed)) for e in entries]


# -- bench ------------------------------------------------------------------

BENCH_HEADER = ("method", "ns_per_call", "max_abs_err", "max_rel_err")
BENCH_REPEATS = 5


def _time_ns(fn, x) -> float:
    best = float("inf")
    for _ in range(BENCH_REPEATS):
        t0 = time.perf_counter_ns()
        fn(x)
        best = min(best, time.perf_counter_ns() - t0)
    return best / x.size


def cmd_bench(theta: float, r: float, samples: int, seed: int):
    """Rows for the midpoint approximation and the platform asinh, plus the certificate."""
    cert = certify_enclosure(theta, r)
    x = sample_points(cert.window.r, samples, seed)
    oracle = asinh_ext(x)
    rows = []
    for name, fn in (("midpoint", lambda v: midpoint_approx(cert, v)), ("platform_asinh", np.arcsinh)):
        approx = np.asarray(fn(x))
        err = np.abs((oracle - approx).to_float())
        rows.append((name, _time_ns(fn, x), err.max(), (err / oracle.to_float()).max()))
    return rows, cert


def bench_respects_certificate(row: tuple, cert) -> bool:
    # same 2-ulp working-precision slack as the verification scans
    _, _, max_abs, max_rel = row
    eps = np.finfo(float).eps
    return max_abs <= cert.max_abs_halfwidth * (1 + 4 * eps) and max_rel <= cert.max_rel_err + 4 * eps


# -- argument parsing -------------------------------------------------------


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return value

    return parse


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError("must be finite")
    return value


def _seed(text: str) -> int:
    value = _positive_int(0)(text)
    if value >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asinhbounds", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default="-", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv"], default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="bounds, oracle and midpoint on a log grid")
    p.add_argument("--theta", type=_finite_float, required=True)
    p.add_argument("--r", type=_finite_float, required=True)
    p.add_argument("--points", type=_positive_int(2), default=20)

    p = sub.add_parser("sharp-constant", parents=[common], help="smallest valid b for the upper bound on (0, r]")
    p.add_argument("--r", type=_finite_float, required=True)

    p = sub.add_parser("minimum", parents=[common], help="interior minimum of f_theta for theta > 2")
    p.add_argument("--theta", type=_finite_float, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the verification scans")
    p.add_argument("--claim", choices=SUITE_CLAIMS, default=None)
    p.add_argument("--theta", type=_finite_float, default=None)
    p.add_argument("--r", type=_finite_float, default=None)
    p.add_argument("--samples", type=_positive_int(1), default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)

    p = sub.add_parser("bench", parents=[common], help="time and check the midpoint approximation")
    p.add_argument("--theta", type=_finite_float, required=True)
    p.add_argument("--r", type=_finite_float, required=True)
    p.add_argument("--samples", type=_positive_int(1), default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    return parser


def _run(args) -> tuple[Sequence[str], list[tuple], int]:
    if args.command == "table":
        return TABLE_HEADER, cmd_table(args.theta, args.r, args.points), EXIT_OK
    if args.command == "sharp-constant":
        return ("r", "b"), cmd_sharp_constant(args.r), EXIT_OK
    if args.command == "minimum":
        return MINIMUM_HEADER, cmd_minimum(args.theta), EXIT_OK
    if args.command == "verify":
        rows = cmd_verify(args.claim, args.theta, args.r, args.samples, args.seed)
        ok = all(row[8] for row in rows)
        return VERIFY_HEADER, rows, EXIT_OK if ok else EXIT_FAILED
    rows, cert = cmd_bench(args.theta, args.r, args.samples, args.seed)
    status = EXIT_OK if bench_respects_certificate(rows[0], cert) else EXIT_FAILED
    if status != EXIT_OK:
        print("midpoint approximation exceeded its certificate", file=sys.stderr)
    return BENCH_HEADER, rows, status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        header, rows, status = _run(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    buf = io.StringIO()
    _write(rows, header, buf)
    if args.output == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(buf.getvalue())
    return status


if __name__ == "__main__":
    sys.exit(main())
