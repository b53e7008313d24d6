"""Tests for the Wright-family scalar evaluators.

Reference values were frozen from 50+ digit series summations (mpmath) and
closed-form Gamma/erfc arithmetic; tags in comments name the oracle used.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mwright import specfun
from mwright.errors import (
    InvalidArgument,
    InvalidMomentOrder,
    InvalidOrder,
    NearSingularOrder,
    NegativeArgument,
    NonConvergence,
    UnsupportedQ,
)
from mwright.specfun import AuxIndex, WrightIndex

E = 2.718281828459045235
INV_SQRT_PI = 0.56418958354775628695  # 1/sqrt(pi)
M13_AT_1 = 0.39623947970650259057    # 60-digit series; equals 3^(2/3) Ai(3^(-1/3))
M14_AT_1 = 0.38333541657068353578    # 60-digit series
M14_AT_2 = 0.16125108345458585591    # 60-digit series
E_HALF_AT_1 = 0.42758357615580700441  # exp(1) * erfc(1)


class TestWrightSeries:
    def test_exponential_reduction(self):
        # W_(0,1)(z) = e^z
        res = specfun.wright_series(WrightIndex(0.0, 1.0), 1.0)
        assert_allclose(res.value, E, rtol=1e-14)
        assert res.method == "series"

    def test_origin_first_kind(self):
        res = specfun.wright_series(WrightIndex(1.0, 1.0), 0.0)
        assert res.value == 1.0

    def test_second_kind_matches_gaussian_form(self):
        # W_(-1/2,1/2)(-1) = M_(1/2)(1) = exp(-1/4)/sqrt(pi)
        res = specfun.wright_series(WrightIndex(-0.5, 0.5), -1.0)
        assert_allclose(res.value, 0.43939128946772239705, rtol=1e-13)

    def test_invalid_order(self):
        with pytest.raises(InvalidOrder):
            WrightIndex(-1.0, 0.5)

    def test_kind_classification(self):
        assert WrightIndex(0.0, 1.0).kind == "first"
        assert WrightIndex(-0.3, 1.0).kind == "second"

    def test_nonconvergence_second_kind_large_argument(self):
        with pytest.raises(NonConvergence):
            specfun.wright_series(WrightIndex(-0.5, 0.5), -40.0)

    def test_error_estimate_below_tol(self):
        res = specfun.wright_series(WrightIndex(-0.25, 0.75), -2.0, tol=1e-10)
        assert res.abs_err_estimate <= 1e-10

    @pytest.mark.parametrize("lam,mu,z", [
        (0.5, 1.2, 2.5), (1.0, 1.0, 4.0), (0.0, 2.0, 1.0), (2.0, 0.5, 3.0),
    ])
    def test_first_kind_against_scipy(self, lam, mu, z):
        # scipy's generalized-Bessel implementation covers lam >= 0 and is
        # a fully independent evaluation route
        from scipy.special import wright_bessel

        mine = specfun.wright_series(WrightIndex(lam, mu), z).value
        assert_allclose(mine, wright_bessel(lam, mu, z), rtol=5e-14)


class TestMWright:
    def test_gaussian_point(self):
        assert_allclose(specfun.m_wright(0.5, 0.0).value, INV_SQRT_PI,
                        rtol=1e-15)

    def test_origin_value(self):
        # M_nu(0) = 1/Gamma(1-nu)
        assert_allclose(specfun.m_wright(0.25, 0.0).value,
                        0.81604893909826298108, rtol=1e-13)

    def test_exponential_limit(self):
        res = specfun.m_wright(0.0, 2.0)
        assert_allclose(res.value, math.exp(-2.0), rtol=1e-15)
        assert res.method == "limit_case"

    def test_airy_case(self):
        assert_allclose(specfun.m_wright(1.0 / 3.0, 1.0).value, M13_AT_1,
                        rtol=1e-13)

    def test_accepts_aux_index(self):
        a = specfun.m_wright(AuxIndex(0.25), 1.0).value
        b = specfun.m_wright(0.25, 1.0).value
        assert a == b

    def test_rejects_bad_order(self):
        with pytest.raises(InvalidOrder):
            specfun.m_wright(1.0, 1.0)
        with pytest.raises(InvalidOrder):
            specfun.m_wright(-0.1, 1.0)
        with pytest.raises(NearSingularOrder):
            specfun.m_wright(0.995, 1.0)

    def test_rejects_negative_argument(self):
        with pytest.raises(NegativeArgument):
            specfun.m_wright(0.25, -1.0)

    def test_method_switch_at_crossover(self):
        rstar = specfun.crossover_radius(0.25)
        assert specfun.m_wright(0.25, 0.9 * rstar).method == "series"
        assert specfun.m_wright(0.25, 1.1 * rstar).method == "asymptotic"

    def test_deep_tail_underflows_to_zero(self):
        res = specfun.m_wright(0.9, 6.0)
        assert res.value == 0.0

    @pytest.mark.parametrize("nu", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_non_negative(self, nu):
        vals = specfun.m_wright_values(nu, np.linspace(0.0, 8.0, 81))
        assert np.all(vals >= 0.0)

    def test_values_matches_scalar(self):
        rs = np.array([0.0, 0.5, 2.0, 9.0, 14.0])
        vals = specfun.m_wright_values(0.3, rs)
        for r, v in zip(rs, vals):
            assert_allclose(v, specfun.m_wright(0.3, float(r)).value,
                            rtol=1e-12, atol=1e-300)


class TestFWright:
    def test_zero_at_origin(self):
        assert specfun.f_wright(0.5, 0.0).value == 0.0

    def test_half_at_one(self):
        # (1/2) M_(1/2)(1)
        assert_allclose(specfun.f_wright(0.5, 1.0).value,
                        0.5 * 0.43939128946772239705, rtol=1e-13)

    def test_quarter_at_two(self):
        # 0.5 * M_(1/4)(2), oracle: direct series summation to 1e-14
        assert_allclose(specfun.f_wright(0.25, 2.0).value, 0.5 * M14_AT_2,
                        rtol=1e-10)

    def test_order_must_be_interior(self):
        with pytest.raises(InvalidOrder):
            specfun.f_wright(0.0, 1.0)


class TestSymmetric:
    def test_even(self):
        a = specfun.m_wright_symmetric(0.375, -2.2).value
        b = specfun.m_wright_symmetric(0.375, 2.2).value
        assert a == b

    def test_gaussian_at_minus_two(self):
        assert_allclose(specfun.m_wright_symmetric(0.5, -2.0).value,
                        0.20755374871029735167, rtol=1e-14)

    def test_origin_three_eighths(self):
        # 1/Gamma(5/8), reciprocal-Gamma reference to 1e-12
        assert_allclose(specfun.m_wright_symmetric(0.375, 0.0).value,
                        0.69709784666201406836, rtol=1e-12)


class TestMittagLeffler:
    def test_classical_exponential(self):
        res = specfun.mittag_leffler_neg(1.0, 1.0)
        assert_allclose(res.value, math.exp(-1.0), rtol=1e-15)

    def test_unit_at_zero(self):
        assert specfun.mittag_leffler_neg(0.7, 0.0).value == 1.0

    def test_half_order(self):
        # Taylor-series oracle: E_(1/2)(-1) = e * erfc(1)
        assert_allclose(specfun.mittag_leffler_neg(0.5, 1.0).value,
                        E_HALF_AT_1, rtol=1e-13)

    def test_half_order_large(self):
        assert_allclose(specfun.mittag_leffler_neg(0.5, 4.0).value,
                        0.13699945762506138989, rtol=1e-8)

    def test_zero_order_geometric(self):
        assert_allclose(specfun.mittag_leffler_neg(0.0, 0.5).value,
                        1.0 / 1.5, rtol=1e-15)
        with pytest.raises(InvalidArgument):
            specfun.mittag_leffler_neg(0.0, 1.5)

    def test_branch_switch(self):
        small = specfun.mittag_leffler_neg(0.5, 0.5)
        large = specfun.mittag_leffler_neg(0.5, 50.0)
        assert small.method == "series"
        assert large.method == "asymptotic"

    @pytest.mark.parametrize("nu", [0.25, 0.5, 0.75, 1.0])
    def test_interlacing(self, nu):
        s = np.linspace(0.0, 5.0, 21)
        vals = np.array([specfun.mittag_leffler_neg(nu, x).value for x in s])
        assert vals[0] == 1.0
        assert np.all(np.diff(vals) < 0.0)
        assert np.all(vals > 0.0)

    def test_negative_order_rejected(self):
        with pytest.raises(InvalidOrder):
            specfun.mittag_leffler_neg(-0.5, 1.0)

    @pytest.mark.parametrize("nu,s,ref", [
        (0.75, 8.0, 0.039335854041138190969),
        (0.9, 17.0, 0.0068838970025679161456),
        (0.25, 2.4, 0.26053613535290809291),
    ])
    def test_crossover_band_estimates_are_honest(self, nu, s, ref):
        # points inside the series/asymptotics band; the returned error
        # estimate must cover the realized deviation (values frozen from
        # 50-digit summation)
        res = specfun.mittag_leffler_neg(nu, s, tol=1e-12)
        assert abs(res.value - ref) <= max(2.0 * res.abs_err_estimate, 1e-13)
        assert abs(res.value - ref) / ref < 1e-5


class TestMomentsAndMellin:
    def test_second_moment_half(self):
        assert specfun.m_wright_moment(0.5, 2.0) == pytest.approx(2.0,
                                                                  rel=1e-14)

    def test_normalization_moment(self):
        assert specfun.m_wright_moment(0.33, 0.0) == 1.0

    def test_first_moment_half(self):
        assert_allclose(specfun.m_wright_moment(0.5, 1.0),
                        1.1283791670955125739, rtol=1e-14)

    def test_moment_order_validation(self):
        with pytest.raises(InvalidMomentOrder):
            specfun.m_wright_moment(0.5, -1.0)

    def test_mellin_unit(self):
        assert specfun.mellin_m_wright(0.5, 1.0) == pytest.approx(1.0)

    def test_mellin_matches_moment(self):
        assert specfun.mellin_m_wright(0.5, 3.0) == pytest.approx(
            specfun.m_wright_moment(0.5, 2.0), rel=1e-15)

    def test_mellin_quarter(self):
        # Gamma(2)/Gamma(5/4), reference Gamma evaluation to 1e-12
        assert_allclose(specfun.mellin_m_wright(0.25, 2.0),
                        1.1032626513208372574, rtol=1e-12)

    def test_mellin_needs_positive_s(self):
        with pytest.raises(InvalidArgument):
            specfun.mellin_m_wright(0.5, 0.0)


class TestSpecialCases:
    def test_gaussian_branch(self):
        assert_allclose(specfun.m_wright_special(2, 2.0).value,
                        0.20755374871029735167, rtol=1e-15)
        assert_allclose(specfun.m_wright_special(2, 0.0).value, INV_SQRT_PI,
                        rtol=1e-15)

    def test_airy_branch_origin(self):
        # 1/Gamma(2/3): only the first series' leading term survives
        assert_allclose(specfun.m_wright_special(3, 0.0).value,
                        0.73848811162164831294, rtol=1e-14)

    def test_airy_branch_negative_argument(self):
        # entire function: the series continues through z < 0
        got = specfun.m_wright_special(3, -2.0).value
        series = specfun.wright_series(
            WrightIndex(-1.0 / 3.0, 2.0 / 3.0), 2.0, tol=1e-14).value
        assert_allclose(got, series, rtol=1e-12)

    def test_unsupported_q(self):
        with pytest.raises(UnsupportedQ):
            specfun.m_wright_special(4, 1.0)

    @pytest.mark.parametrize("q,nu", [(2, 0.5), (3, 1.0 / 3.0)])
    def test_agreement_with_generic_series(self, q, nu):
        zs = np.linspace(-5.0, 5.0, 101)
        for z in zs:
            generic = specfun.wright_series(
                WrightIndex(-nu, 1.0 - nu), -z, tol=1e-14).value
            assert abs(generic - specfun.m_wright_special(q, z).value) < 1e-12


class TestOdeResidual:
    def test_q2_is_exact_relation(self):
        # first-order relation satisfied identically by the Gaussian form
        assert abs(specfun.m_wright_ode_residual(2, 1.0, 1e-4)) < 1e-6

    def test_q3(self):
        assert abs(specfun.m_wright_ode_residual(3, 0.5, 1e-3)) < 1e-5

    def test_q2_origin(self):
        assert abs(specfun.m_wright_ode_residual(2, 0.0, 1e-4)) < 1e-10

    def test_q4_small(self):
        assert abs(specfun.m_wright_ode_residual(4, 0.8, 1e-2)) < 1e-3

    def test_unsupported(self):
        with pytest.raises(UnsupportedQ):
            specfun.m_wright_ode_residual(5, 1.0, 1e-3)


class TestAsymptotics:
    def test_exact_at_half(self):
        for x in (1.0, 2.0, 5.0):
            assert_allclose(specfun.m_wright_asymptotic(0.5, x),
                            specfun.m_wright_special(2, x).value, rtol=1e-14)

    def test_envelope_bounds_tail(self):
        for nu in (0.2, 0.4, 0.6, 0.8):
            env = specfun.m_wright_envelope(nu)
            r0 = specfun.crossover_radius(nu)
            for r in np.linspace(r0, 3 * r0, 7):
                assert env(r) >= specfun.m_wright(nu, float(r)).value

    def test_radius_monotone_in_eps(self):
        assert (specfun.asymptotic_radius(0.3, 1e-14)
                > specfun.asymptotic_radius(0.3, 1e-6))

    def test_gap_at_crossover(self):
        # series and refined large-argument branch agree at the switch
        for nu in (0.15, 0.35, 0.65, 0.85):
            rstar = specfun.crossover_radius(nu)
            s, _, _ = specfun._m_series_raw(nu, rstar, 1e-13)
            b, _ = specfun._m_bridge(nu, rstar, 1e-13)
            assert abs(s - b) / b < 1e-5
