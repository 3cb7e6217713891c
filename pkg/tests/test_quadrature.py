import math

import mpmath
import pytest

from gammae.core import log_gamma
from gammae.errors import ConvergenceError, DomainError
from gammae.gamma_e import Params, log_gamma_e_closed
from gammae.quadrature import (
    MAX_INTEGRAL_PEAK,
    PowerExp,
    QuadratureConfig,
    gamma_e_integral,
    integrate,
    integrate_from_zero,
    integrate_semi_infinite,
    log_integral_power_exp,
)

GRID_X = [0.5, 1.0, 2.5, 5.0, 20.0]
GRID_AB = [(1, 1), (1, 2), (2, 1), (3, 0.5)]


class TestConfig:
    @pytest.mark.parametrize("tol", [0.0, -1e-8, 1e-2, 0.5])
    def test_rejects_tolerance(self, tol):
        with pytest.raises(DomainError):
            QuadratureConfig(rel_tolerance=tol)

    def test_rejects_subdivisions(self):
        with pytest.raises(DomainError):
            QuadratureConfig(max_subdivisions=0)

    def test_rejects_tail_cut(self):
        with pytest.raises(DomainError):
            QuadratureConfig(tail_cut=-3.0)

    def test_defaults(self):
        cfg = QuadratureConfig()
        assert cfg.rel_tolerance == 1e-10
        assert cfg.max_subdivisions == 2000
        assert cfg.tail_cut is None


class TestSemiInfinite:
    def test_exponential(self):
        assert integrate_semi_infinite(lambda y: math.exp(-y)) == pytest.approx(1.0, rel=1e-10)

    def test_gamma_two(self):
        assert integrate_semi_infinite(lambda y: y * math.exp(-y)) == pytest.approx(1.0, rel=1e-10)

    def test_gamma_three_halves(self):
        expected = math.exp(log_gamma(1.5))
        assert expected == pytest.approx(0.8862269255, rel=1e-10)
        got = integrate_semi_infinite(lambda y: math.sqrt(y) * math.exp(-y))
        assert got == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_factorials_generic(self, n):
        got = integrate_semi_infinite(lambda y: y ** (n - 1) * math.exp(-y))
        assert got == pytest.approx(math.factorial(n - 1), rel=1e-10)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_factorials_power_exp(self, n):
        got = integrate_semi_infinite(PowerExp(n - 1.0))
        assert got == pytest.approx(math.factorial(n - 1), rel=1e-10)

    @pytest.mark.parametrize("alpha", [0.5, 0.1, 0.01])
    def test_endpoint_singularity_power_exp(self, alpha):
        # int y^{alpha-1} e^{-y} = Gamma(alpha)
        got = integrate_semi_infinite(PowerExp(alpha - 1.0))
        assert got == pytest.approx(math.exp(log_gamma(alpha)), rel=1e-10)

    def test_endpoint_singularity_generic(self):
        got = integrate_semi_infinite(lambda y: y**-0.5 * math.exp(-y), singular_exponent=0.5)
        assert got == pytest.approx(math.sqrt(math.pi), rel=1e-10)

    def test_slow_rate(self):
        # int y^2 e^{-y/7} = 2 * 7^3
        assert integrate_semi_infinite(PowerExp(2.0, 1.0 / 7.0)) == pytest.approx(686.0, rel=1e-10)

    def test_result_metadata(self):
        res = integrate(PowerExp(3.0))
        assert res.tail_bound <= 0.25 * 1e-10 * res.value
        assert PowerExp(3.0)(res.tail_cut) * res.tail_cut < 1e-10 * res.value
        assert res.error <= 1e-10 * res.value

    def test_tail_bound_is_an_upper_bound(self):
        f = PowerExp(2.5, 1.0)
        for T in (5.0, 10.0, 30.0):
            exact = float(mpmath.gammainc(3.5, T))
            assert exact <= f.tail_bound(T)

    def test_tail_cut_too_small(self):
        with pytest.raises(ConvergenceError) as info:
            integrate_semi_infinite(PowerExp(2.0), QuadratureConfig(tail_cut=3.0))
        assert info.value.estimate > 0

    def test_tail_cut_adequate(self):
        got = integrate_semi_infinite(PowerExp(2.0), QuadratureConfig(tail_cut=60.0))
        assert got == pytest.approx(2.0, rel=1e-10)

    def test_subdivision_limit(self):
        with pytest.raises(ConvergenceError) as info:
            integrate_semi_infinite(PowerExp(2.0), QuadratureConfig(rel_tolerance=1e-9, max_subdivisions=1, tail_cut=60.0))
        assert math.isfinite(info.value.estimate)
        assert info.value.error > 0

    def test_bad_singular_exponent(self):
        with pytest.raises(DomainError):
            integrate_semi_infinite(lambda y: math.exp(-y), singular_exponent=0.0)

    def test_power_exp_domain(self):
        with pytest.raises(DomainError):
            PowerExp(-1.0)
        with pytest.raises(DomainError):
            PowerExp(1.0, rate=0.0)


class TestFinite:
    @pytest.mark.parametrize("s,upper", [(1.0, 3.0), (0.5, 0.2), (-0.5, 2.0), (4.0, 10.0)])
    def test_lower_incomplete_gamma(self, s, upper):
        expected = float(mpmath.gammainc(s + 1, 0, upper))
        assert integrate_from_zero(PowerExp(s), upper) == pytest.approx(expected, rel=1e-10)

    def test_log_integral_normalization(self):
        # peak-normalized route handles a huge integral
        got = log_integral_power_exp(250.0, 1.0)
        assert got == pytest.approx(log_gamma(251.0), rel=1e-12)


class TestGammaEIntegral:
    def test_factorial(self):
        assert gamma_e_integral(5, Params(1, 1)).to_real() == pytest.approx(120, rel=1e-9)

    def test_odd_double_factorial(self):
        assert gamma_e_integral(5, Params(1, 2)).to_real() == pytest.approx(945, rel=1e-9)

    def test_interpolation_point(self):
        p = Params(1, 2)
        got = gamma_e_integral(0.5, p).log_abs
        assert abs(math.expm1(got - log_gamma_e_closed(0.5, p))) <= 1e-9

    @pytest.mark.parametrize("a,b", GRID_AB)
    @pytest.mark.parametrize("x", GRID_X)
    def test_route_agreement(self, x, a, b):
        p = Params(a, b)
        cfg = QuadratureConfig()
        d = gamma_e_integral(x, p, cfg).log_abs - log_gamma_e_closed(x, p)
        assert abs(d) <= 10 * cfg.rel_tolerance

    def test_weaker_domain_condition(self):
        # x + a/b > 0 suffices even though x - 1 + a/b < 0
        p = Params(1, 4)
        x = -0.2
        d = gamma_e_integral(x, p).log_abs - log_gamma_e_closed(x, p)
        assert abs(d) <= 1e-9

    def test_dynamic_range_limit(self):
        with pytest.raises(DomainError, match="gamma_e_closed"):
            gamma_e_integral(MAX_INTEGRAL_PEAK + 2.0, Params(1, 1))
        lv = gamma_e_integral(MAX_INTEGRAL_PEAK, Params(1, 1))
        assert abs(lv.log_abs - log_gamma_e_closed(MAX_INTEGRAL_PEAK, Params(1, 1))) <= 1e-9 * lv.log_abs

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma_e_integral(-0.5, Params(1, 2))
