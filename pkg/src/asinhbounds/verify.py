"""Empirical certification of the inequalities against the double-double oracle.

Each scan draws deterministic pseudorandom points, evaluates both sides of a
claim and counts violations.  A violation is a margin below ``-2`` ulps of the
working-precision bound value; margins are reported in those ulps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import reduce
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import _dd
from .analysis import find_minimum, zhu_sharp_constant
from .core import (
    AlgebraicBound,
    DomainWindow,
    check_theta,
    f_theta,
    lower_constant,
    upper_bound_coeff,
)
from .errors import DomainError
from .oracle import X_MIN, ExtReal, asinh_ext, sinh_cosh_ext

SLACK_ULPS = 2.0
SUBSHARP_OFFSET = 1e-3
CHUNK = 1 << 16


class Counterexample(NamedTuple):
    x: float
    theta: float
    lhs: float
    rhs: float


@dataclass(frozen=True)
class ScanReport:
    claim_id: str
    theta: float
    r: float
    samples: int
    violations: int
    worst_margin: float
    first_counterexample: Optional[Counterexample]
    seed: int
    first_index: Optional[int] = None

    def merge(self, other: "ScanReport") -> "ScanReport":
        """Combine reports over disjoint sample index ranges."""
        if (self.claim_id, self.theta, self.r, self.seed) != (other.claim_id, other.theta, other.r, other.seed):
            raise ValueError("can only merge reports of the same scan")
        first, idx = self.first_counterexample, self.first_index
        if other.first_index is not None and (idx is None or other.first_index < idx):
            first, idx = other.first_counterexample, other.first_index
        return replace(
            self,
            samples=self.samples + other.samples,
            violations=self.violations + other.violations,
            worst_margin=min(self.worst_margin, other.worst_margin),
            first_counterexample=first,
            first_index=idx,
        )


def sample_points(r: float, samples: int, seed: int, lo: float = X_MIN) -> np.ndarray:
    """Half log-uniform on ``[lo, r]``, half uniform on ``(0, r]`` (clipped at ``lo``)."""
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n_log = samples // 2
    lo = min(lo, r)
    logs = np.exp(rng.uniform(np.log(lo), np.log(r), n_log))
    unif = r * (1.0 - rng.random(samples - n_log))
    return np.clip(np.concatenate([logs, unif]), lo, r)


def _ulps(values) -> np.ndarray:
    return np.spacing(np.abs(values))


class Sides(NamedTuple):
    """Both sides of ``lhs <= rhs`` at each point.

    ``gap`` is ``rhs - lhs`` computed in double-double; ``scale`` is one ulp of
    the working-precision bound value; ``param`` is the bound's parameter.
    """

    lhs: np.ndarray
    rhs: np.ndarray
    gap: np.ndarray
    scale: np.ndarray
    param: float


def _report(claim_id, theta, r, seed, x, sides: Sides, offset=0) -> ScanReport:
    margin = sides.gap / sides.scale
    bad = np.flatnonzero(margin < -SLACK_ULPS)
    first = None
    first_index = None
    if bad.size:
        i = int(bad[0])
        first = Counterexample(float(x[i]), float(sides.param), float(sides.lhs[i]), float(sides.rhs[i]))
        first_index = offset + i
    return ScanReport(
        claim_id=claim_id,
        theta=float(theta),
        r=float(r),
        samples=int(x.size),
        violations=int(bad.size),
        worst_margin=float(margin.min()),
        first_counterexample=first,
        seed=int(seed),
        first_index=first_index,
    )


# -- claims -----------------------------------------------------------------
# A claim check maps (theta, window, x) to the Sides of its inequality.


def _bound_below(bound: AlgebraicBound, x) -> Sides:
    value = bound(x)
    asinh = asinh_ext(x)
    return Sides(value, asinh.to_float(), (asinh - value).to_float(), _ulps(value), bound.theta)


def _bound_above(bound: AlgebraicBound, x) -> Sides:
    value = bound(x)
    asinh = asinh_ext(x)
    return Sides(asinh.to_float(), value, (value - asinh).to_float(), _ulps(value), bound.theta)


def _require(cond: bool, message: str):
    if not cond:
        raise DomainError(message)


def _sharp_lower(theta, window, x):
    _require(theta <= 2, "sharp-lower applies only to theta <= 2")
    return _bound_below(AlgebraicBound(lower_constant(theta), theta), x)


def _sharp_upper(theta, window, x):
    _require(theta <= 2, "sharp-upper applies only to theta <= 2")
    c = upper_bound_coeff(theta, window, asinh_ext(window.r))
    return _bound_above(AlgebraicBound(c, theta), x)


def _floor_lower(theta, window, x):
    _require(theta > 2, "floor-lower applies only to theta > 2")
    return _bound_below(AlgebraicBound(lower_constant(theta), theta), x)


def _max_upper(theta, window, x):
    _require(theta > 2, "max-upper applies only to theta > 2")
    c = upper_bound_coeff(theta, window, asinh_ext(window.r))
    return _bound_above(AlgebraicBound(c, theta), x)


def _shifted_lower(theta, window, x):
    # (a + 1) x / (a + sqrt(1 + x^2)) <= asinh x with a = theta
    _require(-1 < theta <= 2, "shifted-lower needs -1 < a <= 2")
    return _bound_below(AlgebraicBound(theta + 1.0, theta), x)


def _shifted_upper_with(b: float, x):
    return _bound_above(AlgebraicBound(b + 1.0, b), x)


def _shifted_upper(theta, window, x):
    return _shifted_upper_with(zhu_sharp_constant(window), x)


def _shifted_upper_subsharp(theta, window, x):
    return _shifted_upper_with(zhu_sharp_constant(window) - SUBSHARP_OFFSET, x)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    check: Callable
    expect_hold: bool = True
    description: str = ""


CLAIMS: dict[str, Claim] = {
    c.claim_id: c
    for c in (
        Claim("sharp-lower", _sharp_lower, description="(1+t) x/(t+sqrt(1+x^2)) < asinh x, t <= 2"),
        Claim("sharp-upper", _sharp_upper, description="asinh x <= f_t(r) x/(t+sqrt(1+x^2)) on (0,r], t <= 2"),
        Claim("floor-lower", _floor_lower, description="4(1-1/t^2) x/(t+sqrt(1+x^2)) <= asinh x, t > 2"),
        Claim("max-upper", _max_upper, description="asinh x <= max(1+t, f_t(r)) x/(t+sqrt(1+x^2)), t > 2"),
        Claim("shifted-lower", _shifted_lower, description="(a+1) x/(a+sqrt(1+x^2)) <= asinh x, a <= 2"),
        Claim("shifted-upper", _shifted_upper, description="asinh x <= (b+1) x/(b+sqrt(1+x^2)), b sharp on (0,r]"),
        Claim(
            "shifted-upper-subsharp",
            _shifted_upper_subsharp,
            expect_hold=False,
            description="same with b lowered by 1e-3; must fail near x = r",
        ),
    )
}


def scan_inequality(claim_id: str, theta: float, window, samples: int, seed: int = 42, chunk: int = CHUNK) -> ScanReport:
    """Scan one inequality claim over ``samples`` points of ``(0, r]``.

    The sample set is split into chunks evaluated independently and merged,
    which is the same partition a parallel run would use.
    """
    try:
        claim = CLAIMS[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim {claim_id!r}") from None
    theta = check_theta(theta)
    window = window if isinstance(window, DomainWindow) else DomainWindow(window)
    x = sample_points(window.r, samples, seed)
    reports = []
    for start in range(0, x.size, chunk):
        xs = x[start:start + chunk]
        sides = claim.check(theta, window, xs)
        reports.append(_report(claim_id, theta, window.r, seed, xs, sides, offset=start))
    return reduce(ScanReport.merge, reports)


def scan_monotonicity(theta: float, lo: float = 1e-6, hi: float = 1e6, count: int = 10_000) -> ScanReport:
    """Check ``f_theta`` increases across a log-spaced grid (1-ulp slack)."""
    theta = check_theta(theta)
    if theta > 2:
        raise DomainError("monotonicity holds only for theta <= 2")
    if not (1e-6 <= lo < hi <= 1e6) or count < 2:
        raise DomainError("grid must satisfy 1e-6 <= lo < hi <= 1e6 with count >= 2")
    grid = np.geomspace(lo, hi, count)
    f = f_theta(theta, grid)
    left, right = f[:-1], f[1:]
    scale = np.spacing(np.maximum(np.abs(left), np.abs(right)))
    margin = (right - left) / scale
    bad = np.flatnonzero(margin < -1.0)
    first = None
    if bad.size:
        i = int(bad[0])
        first = Counterexample(float(grid[i + 1]), theta, float(left[i]), float(right[i]))
    return ScanReport(
        claim_id="monotone",
        theta=theta,
        r=hi,
        samples=count,
        violations=int(bad.size),
        worst_margin=float(margin.min()),
        first_counterexample=first,
        seed=0,
        first_index=int(bad[0]) if bad.size else None,
    )


def find_lower_violation(theta: float) -> Optional[float]:
    """Some ``x`` with ``f_theta(x) < 1 + theta`` (exists for every ``theta > 2``)."""
    theta = check_theta(theta)
    if theta <= 2:
        raise DomainError("f_theta never drops below 1 + theta when theta <= 2")
    x0 = find_minimum(theta).x0
    for x in (x0, x0 * 0.5, x0 * 2.0):
        if f_theta(theta, x) < 1.0 + theta:
            return float(x)
    return None


def _hyperbolic_rhs(c: float, theta: float, sinh: ExtReal, cosh_m1: ExtReal):
    # c sinh x / (theta + cosh x), denominator as (1 + theta) + (cosh x - 1)
    den = _dd.add_f(cosh_m1.pair, 1.0 + theta)
    return ExtReal.from_pair(_dd.div(_dd.mul_f(sinh.pair, c), den))


def scan_oppenheim(theta: float, window, samples: int, seed: int = 42) -> ScanReport:
    """Check the hyperbolic form of the bounds on ``(0, asinh r)``.

    ``x > c_lo sinh x/(theta + cosh x)`` and ``c_up sinh x/(theta + cosh x) > x``,
    with ``c_lo = 1 + theta`` (``theta <= 2``) or ``4(1 - 1/theta^2)`` and
    ``c_up`` the upper constant of the window.  Both sides are evaluated in
    double-double; each point contributes the worse of the two margins.
    """
    theta = check_theta(theta)
    if theta <= -1:
        raise DomainError("hyperbolic bounds need theta > -1")
    window = window if isinstance(window, DomainWindow) else DomainWindow(window)
    asinh_r = asinh_ext(window.r)
    c_lo = lower_constant(theta)
    c_up = upper_bound_coeff(theta, window, asinh_r)
    x = sample_points(float(asinh_r), samples, seed)
    reports = []
    for start in range(0, x.size, CHUNK):
        xs = x[start:start + CHUNK]
        sinh, _, cosh_m1 = sinh_cosh_ext(xs)
        low = _hyperbolic_rhs(c_lo, theta, sinh, cosh_m1)
        high = _hyperbolic_rhs(c_up, theta, sinh, cosh_m1)
        low_f, high_f = low.to_float(), high.to_float()
        lower = Sides(low_f, xs, (xs - low).to_float(), _ulps(low_f), theta)
        upper = Sides(xs, high_f, (high - xs).to_float(), _ulps(high_f), theta)
        # keep, per point, whichever side is closer to failing
        pick = lower.gap / lower.scale <= upper.gap / upper.scale
        merged = Sides(*(np.where(pick, lo, hi) for lo, hi in zip(lower[:4], upper[:4])), theta)
        reports.append(_report("hyperbolic", theta, window.r, seed, xs, merged, offset=start))
    return reduce(ScanReport.merge, reports)
