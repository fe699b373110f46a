import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from asinhbounds.analysis import (
    bracket_minimum,
    certify_enclosure,
    closed_form_minimum,
    find_minimum,
    h_minimizer,
    midpoint_approx,
    zhu_sharp_constant,
)
from asinhbounds.core import DomainWindow, f_theta, h_theta
from asinhbounds.errors import DomainError
from asinhbounds.oracle import asinh_ext

# (sqrt 2 ln(1 + sqrt 2) - 1)/(1 - ln(1 + sqrt 2)), mpmath at 50 digits
SHARP_B_AT_1 = 2.0775346239379449024162851714485546721247218427185


def mp_sharp_b(r):
    r = mpmath.mpf(r)
    a = mpmath.asinh(r)
    return (mpmath.sqrt(1 + r * r) * a - r) / (r - a)


class TestSharpConstant:
    def test_reference_value(self):
        assert zhu_sharp_constant(1.0) == pytest.approx(SHARP_B_AT_1, rel=1e-15)

    def test_small_window_limit(self):
        b = zhu_sharp_constant(1e-4)
        assert 2.0 <= b <= 2.0 + 1e-7

    @settings(max_examples=60)
    @given(st.floats(min_value=1e-8, max_value=1e8))
    def test_against_mpmath(self, r):
        assert zhu_sharp_constant(r) == pytest.approx(float(mp_sharp_b(r)), rel=1e-12)

    def test_increasing_in_r(self):
        b = np.array([zhu_sharp_constant(r) for r in np.geomspace(1e-3, 1e3, 400)])
        assert np.all(np.diff(b) > 0)
        assert np.all(b >= 2)

    def test_naive_formula_loses_digits(self):
        # the cancellation the rearrangement avoids
        r = 1e-4
        naive = (math.hypot(1, r) * math.asinh(r) - r) / (r - math.asinh(r))
        assert abs(naive / float(mp_sharp_b(r)) - 1) > 1e-9
        assert zhu_sharp_constant(r) == pytest.approx(float(mp_sharp_b(r)), rel=1e-14)

    def test_upper_bound_tight_at_r(self):
        for r in (0.1, 1.0, 10.0):
            b = zhu_sharp_constant(r)
            bound = (b + 1) * r / (b + math.hypot(1, r))
            assert bound == pytest.approx(float(asinh_ext(r)), rel=1e-12)

    @pytest.mark.parametrize("r", [0.0, -1.0, math.inf])
    def test_rejects(self, r):
        with pytest.raises(DomainError):
            zhu_sharp_constant(r)


class TestBracket:
    def test_analytic_point_theta_three(self):
        assert h_minimizer(3.0) == pytest.approx(math.sqrt(40) / 3, rel=1e-15)

    def test_analytic_point_tends_to_zero_near_two(self):
        assert h_minimizer(2 + 1e-12) < 1e-5

    @pytest.mark.parametrize("theta", [2.01, 2.5, 3.0, 10.0, 100.0, 1e4])
    def test_sign_change(self, theta):
        lo, hi = bracket_minimum(theta)
        assert lo < hi
        assert h_theta(theta, lo) < 0 < h_theta(theta, hi)

    def test_analytic_point_is_where_q_vanishes(self):
        from asinhbounds.core import q

        for theta in (2.5, 3.0, 10.0):
            assert abs(q(h_minimizer(theta), theta)) < 1e-12

    @pytest.mark.parametrize("theta", [2.0, 1.0, -3.0])
    def test_rejects_monotone_regime(self, theta):
        with pytest.raises(DomainError):
            bracket_minimum(theta)


class TestFindMinimum:
    @pytest.mark.parametrize("theta", [2.01, 2.1, 2.5, 3.0, 10.0, 100.0])
    def test_report_invariants(self, theta):
        rep = find_minimum(theta)
        assert rep.bracket_lo <= rep.x0 <= rep.bracket_hi
        assert abs(rep.residual) <= 1e-14 * (1 + rep.x0)
        assert rep.f_min >= 4 * (1 - 1 / theta**2) - 1e-12
        assert abs(rep.f_min - closed_form_minimum(theta, rep.x0)) <= 1e-10 * rep.f_min
        assert rep.x0 > h_minimizer(theta)
        assert 0 < rep.iterations <= 200

    def test_theta_three_floor(self):
        assert find_minimum(3.0).f_min >= 32 / 9

    def test_against_mpmath_root(self):
        # independent root of h_theta with mpmath's own solver
        theta = 3.0
        root = mpmath.findroot(
            lambda x: x * (theta / mpmath.sqrt(x * x + 1) + 1) / (theta + 1 / mpmath.sqrt(x * x + 1)) - mpmath.asinh(x),
            3.5,
        )
        assert find_minimum(theta).x0 == pytest.approx(float(root), rel=1e-12)

    @pytest.mark.parametrize("theta", [2.5, 3.0, 10.0])
    def test_minimum_is_unique_locally(self, theta):
        rep = find_minimum(theta)
        for factor in (1 - 1e-3, 1 + 1e-3):
            assert f_theta(theta, rep.x0 * factor) > rep.f_min

    def test_minimum_is_global_on_grid(self):
        rep = find_minimum(3.0)
        grid = np.geomspace(1e-4, 1e4, 20_000)
        assert np.all(f_theta(3.0, grid) >= rep.f_min - 1e-14)

    def test_rejects_theta_two(self):
        with pytest.raises(DomainError):
            find_minimum(2.0)


class TestCertificate:
    def test_invariants(self):
        for theta in (-0.9, 0.0, 2.0, 3.0):
            for r in (0.1, 1.0, 10.0):
                cert = certify_enclosure(theta, r)
                assert cert.c_lo < cert.c_up
                hw = (cert.c_up - cert.c_lo) / 2 * r / (theta + math.hypot(1, r))
                assert cert.max_abs_halfwidth == pytest.approx(hw, rel=1e-14)
                assert cert.max_rel_err == pytest.approx((cert.c_up - cert.c_lo) / (2 * cert.c_lo), rel=1e-15)

    def test_shrinks_with_window(self):
        errs = [certify_enclosure(1.0, r).max_rel_err for r in (1e-1, 1e-2, 1e-3)]
        assert errs[0] > errs[1] > errs[2]
        assert certify_enclosure(1.0, 1e-3).c_up == pytest.approx(2.0, rel=1e-6)

    def test_theta_two_gap_grows_like_fourth_power(self):
        # f_2(x) = 3 + x^4/60 + O(x^6), so max_rel_err ~ r^4 / 360
        for r in (0.02, 0.05, 0.1):
            cert = certify_enclosure(2.0, r)
            assert cert.max_rel_err / r**4 == pytest.approx(1 / 360, rel=0.01)

    def test_theta_below_two_gap_grows_like_square(self):
        # f_t(x) = (1 + t) + (2 - t) x^2/6 + ..., so max_rel_err ~ (2 - t) r^2 / (12 (1 + t))
        for r in (0.05, 0.1, 0.2):
            cert = certify_enclosure(1.0, r)
            assert cert.max_rel_err / r**2 == pytest.approx(1 / 24, rel=0.02)

    def test_uses_floor_above_two(self):
        cert = certify_enclosure(3.0, 1.0)
        assert cert.c_lo == pytest.approx(32 / 9)
        assert cert.c_up == 4.0

    def test_window_too_narrow(self):
        with pytest.raises(DomainError):
            certify_enclosure(2.0, 1e-6)


class TestMidpoint:
    def test_error_at_r_equals_halfwidth(self):
        cert = certify_enclosure(2.0, 1.0)
        err = abs((asinh_ext(1.0) - midpoint_approx(cert, 1.0)).to_float())
        assert err == pytest.approx(cert.max_abs_halfwidth, rel=1e-12)

    def test_interior_point(self):
        cert = certify_enclosure(2.0, 1.0)
        err = abs((asinh_ext(0.5) - midpoint_approx(cert, 0.5)).to_float())
        assert err <= cert.max_abs_halfwidth

    def test_many_points(self):
        cert = certify_enclosure(0.5, 2.0)
        x = np.random.default_rng(11).uniform(1e-8, 2.0, 200_000)
        mid = midpoint_approx(cert, x)
        oracle = asinh_ext(x)
        err = np.abs((oracle - mid).to_float())
        assert err.max() <= cert.max_abs_halfwidth
        assert (err / oracle.to_float()).max() <= cert.max_rel_err

    @pytest.mark.parametrize("x", [0.0, -1.0, 1.5])
    def test_outside_window(self, x):
        with pytest.raises(DomainError):
            midpoint_approx(certify_enclosure(2.0, DomainWindow(1.0)), x)
