"""Extended-precision reference values for asinh and friends.

All values are double-double pairs (about 32 significant digits), which is the
ground truth every bound in the package is checked against.  Inputs are
restricted to ``[1e-8, 1e8]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import comb

import numpy as np

from . import _dd
from .errors import DomainError

X_MIN = 1e-8
X_MAX = 1e8

ASINH_SERIES_CUTOFF = 1.0 / 16.0
MINUS_X_SERIES_CUTOFF = 1.0 / 4.0


def asinh_series_coefficient(n: int) -> Fraction:
    # asinh x = sum_n (-1)^n (2n)! / (4^n (n!)^2 (2n+1)) x^(2n+1)
    return Fraction((-1) ** n * comb(2 * n, n), 4**n * (2 * n + 1))


_ASINH_SERIES = [_dd.const(asinh_series_coefficient(n)) for n in range(20)]
# x - asinh x = x^3 * sum_n d_n x^(2n), d_n = -c_(n+1)
_MINUS_X_SERIES = [_dd.const(-asinh_series_coefficient(n + 1)) for n in range(30)]


@dataclass(frozen=True)
class ExtReal:
    """A double-double value (or array of them): ``hi + lo`` unevaluated."""

    hi: np.ndarray
    lo: np.ndarray

    # make ndarray (op) ExtReal dispatch to our reflected operators
    __array_ufunc__ = None

    @classmethod
    def from_pair(cls, pair) -> "ExtReal":
        return cls(np.asarray(pair[0], dtype=np.float64), np.asarray(pair[1], dtype=np.float64))

    @property
    def pair(self):
        return (self.hi, self.lo)

    @property
    def shape(self):
        return self.hi.shape

    def to_float(self) -> np.ndarray:
        return self.hi + self.lo

    def __float__(self) -> float:
        return float(self.hi + self.lo)

    def __getitem__(self, idx) -> "ExtReal":
        return ExtReal(self.hi[idx], self.lo[idx])

    def __neg__(self) -> "ExtReal":
        return ExtReal(-self.hi, -self.lo)

    def __add__(self, other) -> "ExtReal":
        if isinstance(other, ExtReal):
            return ExtReal.from_pair(_dd.add(self.pair, other.pair))
        return ExtReal.from_pair(_dd.add_f(self.pair, np.asarray(other, dtype=np.float64)))

    __radd__ = __add__

    def __sub__(self, other) -> "ExtReal":
        return self + (-other)

    def __rsub__(self, other) -> "ExtReal":
        return (-self) + other

    def to_decimal(self) -> Decimal:
        if self.hi.size != 1:
            raise ValueError("to_decimal needs a scalar ExtReal")
        return Decimal(float(self.hi)) + Decimal(float(self.lo))


def _check_range(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError("argument must be finite")
    if np.any(x < X_MIN) or np.any(x > X_MAX):
        raise DomainError(f"argument outside the supported range [{X_MIN:g}, {X_MAX:g}]")
    return x


def _asinh_series(x: np.ndarray):
    return _dd.mul_f(_dd.horner(_ASINH_SERIES, _dd.two_prod(x, x)), x)


def _asinh_log(x: np.ndarray):
    # log(x + sqrt(1 + x^2)); both terms positive so the sum is cancellation free
    one_plus_sq = _dd.add_f(_dd.two_prod(x, x), 1.0)
    u = _dd.add_f(_dd.sqrt(one_plus_sq), x)
    return _dd.log(u)


def _minus_x_series(x: np.ndarray):
    sq = _dd.two_prod(x, x)
    cube = _dd.mul_f(sq, x)
    return _dd.mul(cube, _dd.horner(_MINUS_X_SERIES, sq))


def _by_branch(x: np.ndarray, cutoff: float, small, large) -> ExtReal:
    flat = np.atleast_1d(x)
    hi = np.empty_like(flat)
    lo = np.empty_like(flat)
    below = flat < cutoff
    for mask, fn in ((below, small), (~below, large)):
        if np.any(mask):
            h, l = fn(flat[mask])
            hi[mask] = h
            lo[mask] = l
    return ExtReal(hi.reshape(x.shape), lo.reshape(x.shape))


def asinh_ext(x) -> ExtReal:
    """asinh(x) in double-double precision for ``x`` in ``[1e-8, 1e8]``.

    Below 1/16 the odd Maclaurin series is summed; above, the logarithmic
    form is evaluated entirely in pair arithmetic.
    """
    x = _check_range(x)
    return _by_branch(x, ASINH_SERIES_CUTOFF, _asinh_series, _asinh_log)


def asinh_minus_x_ext(x) -> ExtReal:
    """``x - asinh(x)`` with relative accuracy, including for tiny ``x``."""
    x = _check_range(x)

    def direct(v):
        return _dd.add_f(_dd.neg(_asinh_log(v)), v)

    return _by_branch(x, MINUS_X_SERIES_CUTOFF, _minus_x_series, direct)


def sinh_cosh_ext(x) -> tuple[ExtReal, ExtReal, ExtReal]:
    """Return ``(sinh x, cosh x, cosh x - 1)`` in double-double precision.

    Built on an ``expm1`` so that neither ``sinh`` nor ``cosh - 1`` cancels for
    small ``x``.  Intended for ``0 < x <= asinh(1e8)``.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)) or np.any(x <= 0) or np.any(x > 20.0):
        raise DomainError("sinh/cosh oracle needs 0 < x <= 20")
    e = _dd.expm1(x)
    one_plus = _dd.add_f(e, 1.0)
    sinh = _dd.ldexp(_dd.add(e, _dd.div(e, one_plus)), -1)
    cosh_m1 = _dd.div(_dd.mul(e, e), _dd.ldexp(one_plus, 1))
    cosh = _dd.add_f(cosh_m1, 1.0)
    return ExtReal.from_pair(sinh), ExtReal.from_pair(cosh), ExtReal.from_pair(cosh_m1)
