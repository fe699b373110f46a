"""Sharp constants, the interior minimum of ``f_theta`` and enclosure certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _dd
from .core import (
    DomainWindow,
    check_theta,
    f_theta,
    h_theta,
    lower_constant,
    shape_denominator,
    upper_bound_coeff,
)
from .errors import ConvergenceError, DomainError
from .oracle import asinh_ext, asinh_minus_x_ext

MAX_DOUBLINGS = 200
MAX_BISECTIONS = 200
RESIDUAL_TOL = 1e-14
WIDTH_TOL = 1e-15
IDENTITY_TOL = 1e-10


def _window(window) -> DomainWindow:
    return window if isinstance(window, DomainWindow) else DomainWindow(window)


def zhu_sharp_constant(window) -> float:
    """Smallest ``b`` with ``asinh x <= (b + 1) x / (b + sqrt(1 + x^2))`` on ``(0, r]``.

    Equals ``(sqrt(1 + r^2) asinh r - r) / (r - asinh r)``.  The numerator is
    rearranged as ``(sqrt(1 + r^2) - 1) asinh r - (r - asinh r)`` and everything
    is carried in double-double, so small windows keep full accuracy; the value
    tends to 2 as ``r -> 0``.
    """
    r = _window(window).r
    rr = np.float64(r)
    sq = _dd.two_prod(rr, rr)
    s = _dd.sqrt(_dd.add_f(sq, 1.0))
    s_minus_1 = _dd.div(sq, _dd.add_f(s, 1.0))
    gap = asinh_minus_x_ext(rr).pair
    numerator = _dd.sub(_dd.mul(s_minus_1, asinh_ext(rr).pair), gap)
    return float(_dd.to_float(_dd.div(numerator, gap)))


def _require_interior(theta) -> float:
    theta = check_theta(theta)
    if theta <= 2:
        raise DomainError(f"f_theta has no interior minimum for theta={theta!r} <= 2")
    return theta


def h_minimizer(theta: float) -> float:
    """Positive root of ``q(x, theta) = 0``: ``sqrt(((theta^2 - 2)/theta)^2 - 1)``."""
    theta = _require_interior(theta)
    k = (theta * theta - 2.0) / theta
    # k^2 - 1 = (k - 1)(k + 1) avoids cancellation as theta -> 2
    return math.sqrt((k - 1.0) * (k + 1.0))


def bracket_minimum(theta: float) -> tuple[float, float]:
    """A bracket ``(x_lo, x_hi)`` with ``h_theta(x_lo) < 0 < h_theta(x_hi)``.

    ``x_lo`` is where ``h_theta`` itself is smallest, so it is negative there;
    ``x_hi`` comes from doubling until ``h_theta`` turns positive.
    """
    theta = _require_interior(theta)
    lo = h_minimizer(theta)
    if not h_theta(theta, lo) < 0:
        raise ConvergenceError(f"h_theta not negative at its minimiser for theta={theta!r}")
    hi = lo
    for _ in range(MAX_DOUBLINGS):
        hi *= 2.0
        if h_theta(theta, hi) > 0:
            return lo, hi
    raise ConvergenceError(f"no sign change of h_theta after {MAX_DOUBLINGS} doublings")


@dataclass(frozen=True)
class MinimumReport:
    theta: float
    x0: float
    f_min: float
    residual: float
    bracket_lo: float
    bracket_hi: float
    iterations: int
    f_min_closed_form: float

    @property
    def floor(self) -> float:
        return 4.0 * (1.0 - 1.0 / self.theta**2)


def closed_form_minimum(theta: float, x0: float) -> float:
    """``(theta + s)^2 / (theta s + 1)`` with ``s = sqrt(1 + x0^2)``."""
    s = math.hypot(1.0, x0)
    return (theta + s) ** 2 / (theta * s + 1.0)


def find_minimum(theta: float) -> MinimumReport:
    """Locate the unique minimiser of ``f_theta`` for ``theta > 2`` by bisection on ``h_theta``.

    Stops once ``|h_theta(x)| <= 1e-14 (1 + x)`` or the bracket is narrower
    than ``1e-15 x``.  The minimum value is cross-checked against its closed
    form to ``1e-10`` relative.
    """
    theta = _require_interior(theta)
    lo, hi = bracket_minimum(theta)
    bracket = (lo, hi)
    for iterations in range(1, MAX_BISECTIONS + 1):
        x = 0.5 * (lo + hi)
        hx = float(h_theta(theta, x))
        if abs(hx) <= RESIDUAL_TOL * (1.0 + x) or hi - lo <= WIDTH_TOL * x:
            break
        if hx < 0:
            lo = x
        else:
            hi = x
    else:
        raise ConvergenceError(f"bisection did not converge in {MAX_BISECTIONS} steps")

    f_min = float(f_theta(theta, x))
    closed = closed_form_minimum(theta, x)
    if abs(f_min - closed) > IDENTITY_TOL * f_min:
        raise ConvergenceError(f"minimum value {f_min!r} disagrees with closed form {closed!r}")
    return MinimumReport(
        theta=theta,
        x0=x,
        f_min=f_min,
        residual=hx,
        bracket_lo=bracket[0],
        bracket_hi=bracket[1],
        iterations=iterations,
        f_min_closed_form=closed,
    )


@dataclass(frozen=True)
class EnclosureCertificate:
    """Lower and upper constants valid on ``(0, r]`` plus the worst-case gaps."""

    theta: float
    window: DomainWindow
    c_lo: float
    c_up: float
    max_abs_halfwidth: float
    max_rel_err: float

    @property
    def c_mid(self) -> float:
        return 0.5 * (self.c_lo + self.c_up)


def certify_enclosure(theta: float, window) -> EnclosureCertificate:
    window = _window(window)
    r = window.r
    c_lo = lower_constant(theta)
    c_up = upper_bound_coeff(theta, window, asinh_ext(r))
    if not c_lo < c_up:
        raise DomainError(
            f"window r={r:g} too narrow to separate the constants in working precision"
        )
    half_gap = 0.5 * (c_up - c_lo)
    return EnclosureCertificate(
        theta=float(theta),
        window=window,
        c_lo=c_lo,
        c_up=c_up,
        max_abs_halfwidth=half_gap * r / float(shape_denominator(theta, r)),
        max_rel_err=half_gap / c_lo,
    )


def midpoint_approx(cert: EnclosureCertificate, x):
    """Fast asinh on ``(0, r]``: the average of the two certified bounds."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)) or np.any(x <= 0) or np.any(x > cert.window.r):
        raise DomainError(f"x must lie in (0, {cert.window.r:g}]")
    out = cert.c_mid * x / shape_denominator(cert.theta, x)
    return out[()] if out.ndim == 0 else out
