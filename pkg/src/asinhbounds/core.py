"""The algebraic bound family for asinh and the functions its proof runs on.

Everything here is working precision (float64, numpy-vectorised).  The
bounds have the shape ``c * x / (theta + sqrt(1 + x^2))``; the monotonicity of

    f_theta(x) = (theta + sqrt(1 + x^2)) * asinh(x) / x

in ``x`` decides which constants ``c`` are valid.  ``h_theta`` shares its sign
with ``f_theta'`` and ``q`` controls the sign of ``h_theta'``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _dd
from .errors import DomainError, SingularityError
from .oracle import X_MAX, X_MIN, asinh_ext, asinh_series_coefficient

POLE_GUARD = 1e-9
_MINUS_X_SERIES_CUTOFF = 0.25
_F_THETA_SPLIT = 1.0

# x - asinh x = x^3 * sum d_n x^(2n); 16 float terms cover x < 1/4
_MINUS_X_COEFFS = np.array([float(-asinh_series_coefficient(n + 1)) for n in range(16)])


class Regime(enum.Enum):
    MONOTONE_INCREASING = "monotone-increasing"
    INTERIOR_MINIMUM = "interior-minimum"


def regime(theta: float) -> Regime:
    """Monotonicity class of ``f_theta``: increasing iff ``theta <= 2``."""
    theta = check_theta(theta)
    return Regime.MONOTONE_INCREASING if theta <= 2 else Regime.INTERIOR_MINIMUM


def check_theta(theta) -> float:
    theta = float(theta)
    if not np.isfinite(theta):
        raise DomainError("theta must be finite")
    return theta


@dataclass(frozen=True)
class DomainWindow:
    """The half-open interval ``(0, r]``."""

    r: float

    def __post_init__(self):
        r = float(self.r)
        if not np.isfinite(r) or r <= 0:
            raise DomainError(f"window endpoint must be positive and finite, got {self.r!r}")
        if r < X_MIN or r > X_MAX:
            raise DomainError(f"window endpoint {r:g} outside [{X_MIN:g}, {X_MAX:g}]")
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class AlgebraicBound:
    """``x -> c * x / (theta + sqrt(1 + x^2))``."""

    c: float
    theta: float

    def __call__(self, x):
        x = _check_x(x)
        return self.c * x / shape_denominator(self.theta, x)


@dataclass(frozen=True)
class QZeros:
    theta1: np.ndarray | float
    theta2: np.ndarray | float


def _check_x(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DomainError("x must be positive and finite")
    return x


def _out(value):
    return value[()] if isinstance(value, np.ndarray) and value.ndim == 0 else value


def _sqrt1p_sq(x):
    return np.hypot(1.0, x)


def shape_denominator(theta: float, x):
    """``theta + sqrt(1 + x^2)``, written as ``(1 + theta) + x^2/(1 + sqrt(1 + x^2))``.

    The rewritten form stays accurate when ``theta`` is near ``-1`` and ``x`` is
    small, where the literal sum cancels.
    """
    x = np.asarray(x, dtype=np.float64)
    return (1.0 + theta) + x * x / (1.0 + _sqrt1p_sq(x))


def asinh_minus_x(x):
    """``x - asinh(x)`` in working precision without cancellation at small ``x``."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    small = x < _MINUS_X_SERIES_CUTOFF
    xs = x[small]
    sq = xs * xs
    out[small] = xs * sq * np.polynomial.polynomial.polyval(sq, _MINUS_X_COEFFS)
    xl = x[~small]
    out[~small] = xl - np.arcsinh(xl)
    return out


def f_theta(theta: float, x):
    """``(theta + sqrt(1 + x^2)) * asinh(x) / x`` for ``x > 0``.

    For ``x < 1`` it is evaluated as ``A + [B + (A + B) * C]`` with
    ``A = 1 + theta``, ``B = x^2/(1 + sqrt(1 + x^2))`` and ``C = asinh(x)/x - 1``.
    The bracket is computed to full relative accuracy, so the limit
    ``1 + theta`` at ``0+`` is reproduced exactly and rounding cannot break
    monotonicity by more than an ulp.  Any real ``theta`` is accepted; for ``theta <= -1`` the value may
    be non-positive.
    """
    theta = check_theta(theta)
    x = _check_x(x)
    a = 1.0 + theta
    b = x * x / (1.0 + _sqrt1p_sq(x))
    c = -asinh_minus_x(x) / x
    near = a + (b + (a + b) * c)
    # once C approaches -1 the bracket cancels; the plain product is accurate there
    far = (a + b) * np.arcsinh(x) / x
    return _out(np.where(x < _F_THETA_SPLIT, near, far))


def h_theta(theta: float, x):
    """The auxiliary ``x (theta/s + 1)/(theta + 1/s) - asinh x``, ``s = sqrt(1 + x^2)``.

    Uses the equivalent form ``(1 - theta) x^3 / ((1 + s)(theta s + 1)) + (x - asinh x)``
    which has no cancellation as ``x -> 0``.  Raises :class:`SingularityError`
    within ``1e-9`` of the pole ``theta + 1/s = 0`` (possible only for
    ``-1 < theta < 0``).
    """
    theta = check_theta(theta)
    x = _check_x(x)
    s = _sqrt1p_sq(x)
    if np.any(np.abs(theta + 1.0 / s) < POLE_GUARD):
        raise SingularityError(f"h_theta has a pole near x for theta={theta!r}")
    first = (1.0 - theta) * x**3 / ((1.0 + s) * (theta * s + 1.0))
    return _out(first + asinh_minus_x(x))


def q(x, theta):
    """``2 - theta^2 + theta * sqrt(x^2 + 1)``, summed with exact products.

    ``theta`` may be a scalar or an array broadcasting against ``x``.
    """
    x = _check_x(x)
    theta = np.asarray(theta, dtype=np.float64)
    if not np.all(np.isfinite(theta)):
        raise DomainError("theta must be finite")
    s = _sqrt1p_sq(x)
    theta, s = np.broadcast_arrays(theta, s)
    total = _dd.add_f(_dd.sub(_dd.two_prod(theta, s), _dd.two_prod(theta, theta)), 2.0)
    return _out(_dd.to_float(total))


def theta_zeros(x) -> QZeros:
    """The two roots of ``q(x, .)``, with ``theta1`` in rationalised form."""
    x = _check_x(x)
    total = _sqrt1p_sq(x) + np.hypot(3.0, x)
    return QZeros(theta1=_out(-4.0 / total), theta2=_out(total / 2.0))


def _bound_theta(theta) -> float:
    theta = check_theta(theta)
    if theta <= -1:
        raise DomainError(f"bounds are certified only for theta > -1, got {theta!r}")
    return theta


def lower_constant(theta: float) -> float:
    """``1 + theta`` for ``theta <= 2``, else the floor ``4 (1 - 1/theta^2)``."""
    theta = _bound_theta(theta)
    return 1.0 + theta if theta <= 2 else 4.0 * (1.0 - 1.0 / theta**2)


def lower_bound(theta: float, x):
    theta = _bound_theta(theta)
    return _out(AlgebraicBound(lower_constant(theta), theta)(x))


def upper_bound_coeff(theta: float, window: DomainWindow, asinh_r) -> float:
    """Numerator constant of the upper bound valid on all of ``(0, r]``.

    ``asinh_r`` should be the oracle value of ``asinh(window.r)``; an
    :class:`~asinhbounds.oracle.ExtReal` or a float.  For ``theta <= 2`` this is
    ``f_theta(r)`` (tight at ``x = r``); for ``theta > 2`` it is
    ``max(1 + theta, f_theta(r))``.
    """
    theta = _bound_theta(theta)
    if not isinstance(window, DomainWindow):
        window = DomainWindow(window)
    r = window.r
    c = float(shape_denominator(theta, r)) * float(asinh_r) / r
    if theta > 2:
        c = max(1.0 + theta, c)
    return c


def upper_bound(theta: float, window: DomainWindow, x, asinh_r=None):
    if not isinstance(window, DomainWindow):
        window = DomainWindow(window)
    if asinh_r is None:
        asinh_r = asinh_ext(window.r)
    c = upper_bound_coeff(theta, window, asinh_r)
    return _out(AlgebraicBound(c, theta)(x))
