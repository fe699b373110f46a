"""Vectorised double-double arithmetic on numpy arrays.

A double-double is an unevaluated pair ``(hi, lo)`` with ``|lo| <= ulp(hi)/2``,
giving roughly 106 bits of significand.  Products use Dekker splitting because
numpy exposes no fused multiply-add.  Everything here works elementwise on
float64 arrays (0-d arrays included) and never allocates Python objects per
element.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

DD = tuple  # (hi, lo) pair of float64 arrays

_SPLITTER = 134217729.0  # 2**27 + 1

LN2 = (0.6931471805599453, 2.3190468138462996e-17)
SQRT_HALF = 0.7071067811865476


def const(value: Fraction | int) -> DD:
    """Round an exact rational to the nearest double-double."""
    value = Fraction(value)
    hi = float(value)
    lo = float(value - Fraction(hi))
    return (hi, lo)


def from_float(a) -> DD:
    a = np.asarray(a, dtype=np.float64)
    return (a, np.zeros_like(a))


def two_sum(a, b):
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    e = b - (s - a)
    return s, e


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def add(x: DD, y: DD) -> DD:
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def add_f(x: DD, b) -> DD:
    s, e = two_sum(x[0], b)
    e = e + x[1]
    return quick_two_sum(s, e)


def neg(x: DD) -> DD:
    return (-x[0], -x[1])


def sub(x: DD, y: DD) -> DD:
    return add(x, neg(y))


def mul(x: DD, y: DD) -> DD:
    p, e = two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return quick_two_sum(p, e)


def mul_f(x: DD, b) -> DD:
    p, e = two_prod(x[0], b)
    e = e + x[1] * b
    return quick_two_sum(p, e)


def div(x: DD, y: DD) -> DD:
    q1 = x[0] / y[0]
    r = sub(x, mul_f(y, q1))
    q2 = r[0] / y[0]
    r = sub(r, mul_f(y, q2))
    q3 = r[0] / y[0]
    q1, q2 = quick_two_sum(q1, q2)
    return add_f((q1, q2), q3)


def ldexp(x: DD, k) -> DD:
    return (np.ldexp(x[0], k), np.ldexp(x[1], k))


def sqrt(x: DD) -> DD:
    """Square root by one Newton correction of the float root."""
    s = np.sqrt(x[0])
    r = sub(x, two_prod(s, s))
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.where(s > 0, r[0] / (2.0 * s), 0.0)
    return quick_two_sum(s, d)


def horner(coeffs: list[DD], z: DD) -> DD:
    """Evaluate ``sum(coeffs[n] * z**n)``."""
    acc = (np.full_like(z[0], coeffs[-1][0]), np.full_like(z[0], coeffs[-1][1]))
    for c in reversed(coeffs[:-1]):
        acc = add(mul(acc, z), c)
    return acc


_ATANH_COEFFS = [const(Fraction(1, 2 * n + 1)) for n in range(24)]


def log(x: DD) -> DD:
    """Natural logarithm of a positive double-double.

    Reduces ``x = 2**k * m`` with ``m`` in ``[sqrt(1/2), sqrt(2))`` and sums
    ``log m = 2 atanh((m - 1)/(m + 1))``; ``|z| < 0.172`` so 24 terms reach
    well past 1e-32.
    """
    m, k = np.frexp(x[0])
    low = m < SQRT_HALF
    k = np.where(low, k - 1, k)
    mx = ldexp(x, -k)
    z = div(add_f(mx, -1.0), add_f(mx, 1.0))
    series = mul(z, horner(_ATANH_COEFFS, mul(z, z)))
    return add(mul_f(LN2, k.astype(np.float64)), ldexp(series, 1))


_EXPM1_COEFFS = [const(Fraction(1, _fact)) for _fact in (1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800)]
_EXP_HALVINGS = 10


def expm1(x) -> DD:
    """``exp(x) - 1`` of float input to double-double accuracy.

    After reduction by ``k ln 2`` the argument is halved ten times, the short
    Taylor series is summed, and ``expm1(2a) = expm1(a) * (2 + expm1(a))``
    undoes the halving without any cancellation.
    """
    x = np.asarray(x, dtype=np.float64)
    k = np.rint(x / LN2[0])
    r = add_f(neg(mul_f(LN2, k)), x)
    r = ldexp(r, -_EXP_HALVINGS)
    e = mul(r, horner(_EXPM1_COEFFS, r))
    for _ in range(_EXP_HALVINGS):
        e = mul(e, add_f(e, 2.0))
    ki = k.astype(np.int64)
    return add_f(ldexp(e, ki), np.ldexp(1.0, ki) - 1.0)


def to_float(x: DD):
    return x[0] + x[1]
