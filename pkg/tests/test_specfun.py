import math

import numpy as np
import pytest
import scipy.special as sp

from cmfun import specfun as sf
from cmfun._quadrature import quad
from cmfun._series import euler_tail
from cmfun.errors import ConvergenceError, DomainError

LOG2 = math.log(2.0)
GRID = np.geomspace(1e-2, 1e3, 40)


class TestClosedValues:
    @pytest.mark.parametrize("x,expected", [
        (1.0, LOG2),
        (0.5, math.pi / 2),
        (1.5, 2.0 - math.pi / 2),
        (2.0, 1.0 - LOG2),          # recurrence beta(x) + beta(x+1) = 1/x
    ])
    def test_nielsen_beta(self, x, expected):
        assert abs(sf.nielsen_beta(x) - expected) <= 1e-13

    @pytest.mark.parametrize("x,expected", [
        (1.0, math.pi ** 2 / 6),            # tau_1 = (6/pi^2) t/(e^t - 1)
        (0.5, math.pi ** 2 / 2),            # tau_1/2 = t/(pi^2 sinh(t/2))
        (1.5, (math.pi ** 2 - 8.0) / 2),    # tau_3/2 = t e^-t/((pi^2-8) sinh(t/2))
    ])
    def test_trigamma(self, x, expected):
        # 1 - e^-t = 2 e^(-t/2) sinh(t/2), so the tau_a normalizations force
        # 2 psi'(1/2) = pi^2 and 2 psi'(3/2) = pi^2 - 8
        assert abs(sf.trigamma(x) - expected) <= 1e-13

    def test_log_gamma_at_one(self):
        assert abs(sf.log_gamma(1.0)) <= 1e-13


class TestAgainstScipy:
    def test_digamma(self):
        err = np.abs(sf.digamma(GRID) - sp.digamma(GRID))
        assert np.all(err <= 1e-13 * (1.0 + np.abs(sp.digamma(GRID))))

    def test_trigamma(self):
        ref = sp.polygamma(1, GRID)
        assert np.all(np.abs(sf.trigamma(GRID) - ref) <= 1e-13 * (1 + ref))

    def test_tetragamma(self):
        ref = sp.polygamma(2, GRID)
        assert np.all(np.abs(sf.tetragamma(GRID) - ref)
                      <= 1e-13 * (1 + np.abs(ref)))

    def test_log_gamma(self):
        ref = sp.gammaln(GRID)
        assert np.all(np.abs(sf.log_gamma(GRID) - ref)
                      <= 1e-13 * (1 + np.abs(ref)))

    def test_complex_variants(self):
        zs = np.array([0.5 + 3j, 2 - 1j, 10 + 10j, 0.01 + 0.01j,
                       -5 + 0.5j, -15 + 2j])
        assert np.max(np.abs(sf.log_gamma_complex(zs) - sp.loggamma(zs))) < 1e-12
        assert np.max(np.abs(sf.digamma_complex(zs) - sp.digamma(zs))) < 1e-13

    def test_si_ci(self):
        for x in (0.1, 1.0, 3.9, 4.1, 10.0, 100.0, 1e4):
            si, ci = sf.sin_cos_integrals(x)
            ref_si, ref_ci = sp.sici(x)
            assert abs(si - (ref_si - math.pi / 2)) <= 1e-12
            assert abs(ci - ref_ci) <= 1e-12


class TestComplexBeta:
    def test_real_axis(self):
        assert abs(sf.nielsen_beta_complex(1.0 + 0j) - LOG2) <= 1e-13
        assert abs(sf.nielsen_beta_complex(2.0 + 0j) - (1 - LOG2)) <= 1e-13

    def test_conjugate_symmetry(self):
        for z in (0.7 + 2.3j, 5.0 + 0.1j, 0.01 + 40j):
            assert abs(sf.nielsen_beta_complex(z.conjugate())
                       - sf.nielsen_beta_complex(z).conjugate()) < 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.nielsen_beta_complex(-1.0 + 1j)


class TestSinCosIntegrals:
    def test_limit_at_zero(self):
        si, _ = sf.sin_cos_integrals(1e-8)
        assert abs(si + math.pi / 2) < 1e-7

    def test_cauchy_kernel_at_one(self):
        # independent oracle: sum of half-period panels of sin t/(1+t),
        # accelerated as an alternating series
        panels = [quad(lambda t: np.sin(t) / (1.0 + t),
                       k * math.pi, (k + 1) * math.pi,
                       abs_tol=1e-14, rel_tol=1e-13) for k in range(40)]
        oracle = euler_tail(panels)
        si, ci = sf.sin_cos_integrals(1.0)
        value = ci * math.sin(1.0) - si * math.cos(1.0)
        assert abs(value - oracle) <= 1e-8

    def test_asymptotic_decay(self):
        x = 1e4
        si, ci = sf.sin_cos_integrals(x)
        assert abs((ci * math.sin(x) - si * math.cos(x)) * x - 1.0) <= 1e-3

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.sin_cos_integrals(0.0)


class TestPrym:
    def test_value_at_one(self):
        assert abs(sf.prym_P(1.0) - (1.0 - math.exp(-1.0))) <= 1e-13

    def test_value_at_two(self):
        # int_0^1 t e^(-t) dt = 1 - 2/e by parts
        assert abs(sf.prym_P(2.0) - (1.0 - 2.0 * math.exp(-1.0))) <= 1e-13

    def test_series_vs_integral(self):
        for x in (0.4, 1.0, 1.7, 6.0):
            assert abs(sf.prym_P(x) - sf.prym_P_integral(x)) <= 1e-11

    def test_gamma_decomposition(self):
        x = 1.7
        assert abs(sf.prym_P(x) + sf.prym_Q(x) - math.gamma(x)) <= 1e-10


class TestBetaALambda:
    def test_reduces_to_beta(self):
        assert abs(sf.beta_a_lambda(0.9, 1.0, 1.0)
                   - sf.nielsen_beta(0.9)) <= 1e-12

    def test_log2(self):
        assert abs(sf.beta_a_lambda(1.0, 1.0, 1.0) - LOG2) <= 1e-13

    def test_vs_integral(self):
        for x, a, lam in ((2.0, 0.5, 1.5), (1.0, 0.3, 1.0), (0.7, 1.0, 2.5)):
            assert abs(sf.beta_a_lambda(x, a, lam)
                       - sf.beta_a_lambda_integral(x, a, lam)) <= 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.beta_a_lambda(1.0, 1.5, 1.0)
        with pytest.raises(DomainError):
            sf.beta_a_lambda(1.0, 0.5, 0.0)


class TestGammaRatioLog:
    def test_collapses(self):
        assert sf.gamma_ratio_log(1.3, 0.0, 0.9) == pytest.approx(0.0, abs=1e-14)

    def test_symmetric(self):
        assert sf.gamma_ratio_log(1.3, 0.4, 0.9) == pytest.approx(
            sf.gamma_ratio_log(1.3, 0.9, 0.4), abs=1e-14)

    def test_integer_b(self):
        assert abs(sf.gamma_ratio_log(1.0, 0.5, 2.0)
                   - math.log(1.5 * 2.5 / 2.0)) <= 1e-14

    def test_nonnegative(self):
        for x in GRID:
            assert sf.gamma_ratio_log(x, 0.5, 1.3) >= 0.0


class TestInvariants:
    def test_beta_recurrence(self):
        err = np.abs(sf.nielsen_beta(GRID) + sf.nielsen_beta(GRID + 1.0)
                     - 1.0 / GRID)
        assert np.max(err) <= 1e-12

    def test_series_route_agrees(self):
        for x in GRID:
            assert abs(sf.nielsen_beta_series(x) - sf.nielsen_beta(x)) <= 1e-11

    def test_trigamma_recurrence(self):
        err = np.abs(sf.trigamma(GRID) - sf.trigamma(GRID + 1.0)
                     - 1.0 / GRID ** 2)
        assert np.all(err <= 1e-12 * (1.0 + sf.trigamma(GRID)))

    def test_beta_positive_decreasing(self):
        vals = sf.nielsen_beta(GRID)
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) < 0)

    def test_beta_a_lambda_reduction_on_grid(self):
        for x in np.geomspace(0.1, 50, 12):
            assert abs(sf.beta_a_lambda(x, 1.0, 1.0)
                       - sf.nielsen_beta(x)) <= 1e-12


class TestPolicies:
    def test_direct_path_with_tail_bound(self):
        policy = sf.SeriesPolicy(max_terms=2_000_000, abs_tol=1e-6,
                                 acceleration="direct-with-tail-bound")
        assert abs(sf.nielsen_beta_series(2.0, policy)
                   - sf.nielsen_beta(2.0)) <= 1e-6

    def test_direct_path_unreachable_tolerance(self):
        policy = sf.SeriesPolicy(max_terms=1000, abs_tol=1e-12,
                                 acceleration="direct-with-tail-bound")
        with pytest.raises(ConvergenceError):
            sf.nielsen_beta_series(2.0, policy)

    def test_eval_point_validation(self):
        with pytest.raises(DomainError):
            sf.EvalPoint(x=-1.0)
        with pytest.raises(DomainError):
            sf.EvalPoint(x=1.0, z=-1.0 + 1j)
        assert sf.EvalPoint(x=1.0, z=2.0 + 1j).x == 1.0

    def test_series_policy_validation(self):
        with pytest.raises(DomainError):
            sf.SeriesPolicy(max_terms=4)
        with pytest.raises(DomainError):
            sf.SeriesPolicy(acceleration="nonsense")


@pytest.mark.parametrize("fn", [sf.nielsen_beta, sf.digamma, sf.trigamma,
                                sf.log_gamma, sf.prym_P])
def test_domain_errors(fn):
    with pytest.raises(DomainError):
        fn(0.0)
    with pytest.raises(DomainError):
        fn(-2.0)
