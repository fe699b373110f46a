from decimal import Decimal

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from asinhbounds.errors import DomainError
from asinhbounds.oracle import (
    ASINH_SERIES_CUTOFF,
    MINUS_X_SERIES_CUTOFF,
    ExtReal,
    _asinh_log,
    _asinh_series,
    _minus_x_series,
    asinh_ext,
    asinh_minus_x_ext,
    sinh_cosh_ext,
)

from conftest import decimal_asinh, ext_to_mpf

# ln(1 + sqrt 2) and 1 - ln(1 + sqrt 2), mpmath at 50 digits
ASINH_ONE = mpmath.mpf("0.88137358701954302523260932497979230902816032826164")
ONE_MINUS_ASINH_ONE = mpmath.mpf("0.11862641298045697476739067502020769097183967173836")
# 0.0001 - asinh(0.0001) for the decimal argument, mpmath at 50 digits
GAP_AT_1E_4 = mpmath.mpf("1.6666666591666667113095235057043673165809708481773e-13")


def rel_err(ext, truth, i=None):
    return abs(ext_to_mpf(ext, i) / mpmath.mpf(truth) - 1)


def test_asinh_one():
    assert rel_err(asinh_ext(1.0), ASINH_ONE) < 1e-30


def test_asinh_large_asymptote():
    # asinh x = ln(2x) + 1/(4x^2) + ..., so ln(2e6) agrees to ~1e-12 relative only
    val = ext_to_mpf(asinh_ext(1e6))
    assert abs(val / mpmath.log(2e6) - 1) <= 1e-12


def test_series_leading_term():
    x = np.array([1e-8, 1e-7, 1e-6])
    ratio = asinh_ext(x).to_float() / x
    np.testing.assert_allclose(ratio, 1.0, rtol=1e-11, atol=0)


def test_independent_decimal_oracle_100_points():
    rng = np.random.default_rng(20240611)
    x = 10.0 ** rng.uniform(-8, 8, 100)
    ext = asinh_ext(x)
    for i, xi in enumerate(x):
        truth = decimal_asinh(float(xi))
        got = Decimal(float(ext.hi[i])) + Decimal(float(ext.lo[i]))
        assert abs(got / truth - 1) <= Decimal("1e-25")


def test_minus_x_at_one():
    assert rel_err(asinh_minus_x_ext(1.0), ONE_MINUS_ASINH_ONE) < 1e-28


def test_minus_x_small_argument_keeps_relative_accuracy():
    x = mpmath.mpf(1e-4)  # the binary double nearest 1e-4
    assert rel_err(asinh_minus_x_ext(1e-4), x - mpmath.asinh(x)) < 1e-25
    assert rel_err(asinh_minus_x_ext(1e-4), GAP_AT_1E_4) < 1e-15
    # the double-precision subtraction this guards against
    naive = 1e-4 - np.arcsinh(1e-4)
    assert abs(naive / float(GAP_AT_1E_4) - 1) > 1e-10


def test_minus_x_cubic_limit():
    x = np.array([1e-8, 1e-6])
    np.testing.assert_allclose(asinh_minus_x_ext(x).to_float() / x**3, 1 / 6, rtol=1e-10)


@pytest.mark.parametrize("x", np.geomspace(1e-8, 1e8, 40))
def test_minus_x_against_mpmath(x):
    truth = mpmath.mpf(x) - mpmath.asinh(mpmath.mpf(x))
    assert rel_err(asinh_minus_x_ext(x), truth) <= 1e-20


def test_branch_crossovers_agree():
    xs = np.array([ASINH_SERIES_CUTOFF])
    a = _asinh_series(xs)
    b = _asinh_log(xs)
    assert abs((mpmath.mpf(a[0][0]) + mpmath.mpf(a[1][0])) / (mpmath.mpf(b[0][0]) + mpmath.mpf(b[1][0])) - 1) <= 1e-22

    xs = np.array([MINUS_X_SERIES_CUTOFF])
    a = _minus_x_series(xs)
    direct = mpmath.mpf(xs[0]) - (mpmath.mpf(_asinh_log(xs)[0][0]) + mpmath.mpf(_asinh_log(xs)[1][0]))
    assert abs((mpmath.mpf(a[0][0]) + mpmath.mpf(a[1][0])) / direct - 1) <= 1e-22


def test_strictly_increasing_on_grid():
    x = np.geomspace(1e-8, 1e8, 5000)
    ext = asinh_ext(x)
    step = (ext[1:] - ext[:-1])
    assert np.all(step.to_float() > 0)


@given(st.floats(min_value=1e-8, max_value=1e8))
def test_below_identity(x):
    assert (x - asinh_ext(x)).to_float() > 0


@given(st.floats(min_value=0.5, max_value=1e8))
def test_difference_matches_minus_x(x):
    via_sub = x - asinh_ext(x)
    direct = asinh_minus_x_ext(x)
    assert abs(float((via_sub - direct).to_float()) / float(direct)) <= 1e-18


@pytest.mark.parametrize("bad", [0.0, -1.0, 1e-9, 2e8, np.inf, np.nan])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        asinh_ext(bad)
    with pytest.raises(DomainError):
        asinh_minus_x_ext(bad)


def test_sinh_cosh_reference_point():
    sinh, cosh, cosh_m1 = sinh_cosh_ext(1.0)
    assert rel_err(sinh, mpmath.sinh(1)) < 1e-30
    assert rel_err(cosh, mpmath.cosh(1)) < 1e-30
    assert rel_err(cosh_m1, mpmath.cosh(1) - 1) < 1e-30


def test_sinh_tiny_argument():
    sinh, _, cosh_m1 = sinh_cosh_ext(1e-8)
    assert rel_err(sinh, mpmath.sinh(mpmath.mpf(1e-8))) < 1e-28
    assert rel_err(cosh_m1, mpmath.cosh(mpmath.mpf(1e-8)) - 1) < 1e-28


def test_ext_real_arithmetic():
    a = asinh_ext(np.array([1.0, 2.0]))
    b = -(1.0 - a)
    assert isinstance(b, ExtReal)
    np.testing.assert_allclose(b.to_float(), a.to_float() - 1.0)
    assert a[0].to_decimal() == Decimal(float(a.hi[0])) + Decimal(float(a.lo[0]))
    with pytest.raises(ValueError):
        a.to_decimal()
