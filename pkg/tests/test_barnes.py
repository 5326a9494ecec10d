import math

import numpy as np
import pytest

from cmfun import barnes as bn
from cmfun import monotonicity as mono
from cmfun.errors import DomainError


class TestQKernel:
    def test_values(self):
        assert bn.q_kernel(0.0) == 0.0
        assert bn.q_kernel(0.5) == pytest.approx(0.125, abs=1e-16)
        assert bn.q_kernel(2.5) == pytest.approx(0.125, abs=1e-16)

    def test_range_and_period(self):
        ts = np.linspace(0.0, 7.0, 701)
        vals = bn.q_kernel(ts)
        assert np.all((vals >= 0.0) & (vals <= 0.125))
        assert np.max(np.abs(bn.q_kernel(ts) - bn.q_kernel(ts + 3.0))) < 1e-14

    def test_domain(self):
        with pytest.raises(DomainError):
            bn.q_kernel(-0.1)


class TestStirlingRemainder:
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0, 10.0, 50.0])
    def test_identity(self, x):
        lhs, rhs = bn.stirling_remainder(x)
        assert abs(lhs - rhs) <= 1e-7

    def test_value_at_one(self):
        lhs, _ = bn.stirling_remainder(1.0)
        assert abs(lhs - (1.0 - 0.5 * math.log(2 * math.pi))) <= 1e-12

    def test_first_correction(self):
        lhs, _ = bn.stirling_remainder(10.0)
        assert abs(lhs - 1.0 / 120.0) <= 0.05 / 120.0

    def test_asymptotics(self):
        lhs, _ = bn.stirling_remainder(1e4)
        assert abs(12.0e4 * lhs - 1.0) <= 1e-3


class TestPKernel:
    def test_brute_force_cross_check(self):
        params = bn.BarnesKernelParams(n=1, k_cap=10 ** 6)
        for t in (0.01, 1.0, 7.3, 60.0):
            assert abs(bn.p_kernel(t, 1)
                       - bn.p_kernel_series(t, params)) <= 1e-10

    @pytest.mark.parametrize("n", [2, 3])
    def test_higher_orders_match_series(self, n):
        params = bn.BarnesKernelParams(n=n, k_cap=10 ** 5)
        for t in (0.5, 5.0):
            a = bn.p_kernel(t, n)
            assert abs(a - bn.p_kernel_series(t, params)) <= 1e-12 * abs(a)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_positive_and_decreasing(self, n):
        ts = np.geomspace(1e-2, 150.0, 100)
        vals = bn.p_kernel(ts, n)
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) < 0)

    def test_small_t_limit(self):
        # t^2 p_n(t) -> 2 (2 pi)^(-2n) zeta(2n); equals 1/12 for n = 1
        assert bn.barnes_g_limit(1) == pytest.approx(1.0 / 12.0, abs=1e-15)
        assert abs(1e-12 * bn.p_kernel(1e-6, 1) - 1.0 / 12.0) <= 1e-8

    def test_params_validation(self):
        with pytest.raises(DomainError):
            bn.BarnesKernelParams(n=0)
        with pytest.raises(DomainError):
            bn.BarnesKernelParams(n=1, k_cap=10)


class TestR22:
    def test_positive_decreasing(self):
        r5 = bn.r_2_2n(5.0, 1)
        r10 = bn.r_2_2n(10.0, 1)
        assert 0.0 < r10 < r5

    def test_leading_decay(self):
        # w R(w) -> t^2 p_1(0+) = 1/12 (the integrand does not vanish at 0)
        w = 1000.0
        assert abs(w * bn.r_2_2n(w, 1) - 1.0 / 12.0) <= 1e-2

    def test_cm(self):
        grid = mono.CheckGrid(np.geomspace(0.5, 50.0, 12), n_max=6)
        assert mono.cm_check(lambda w: bn.r_2_2n(w, 1), grid).passed

    def test_positivity_object(self):
        # positivity of t - sin t + c(1 - cos t - t sin(t)/2) at c = 1/(pi k)
        for k in (1, 2, 10):
            assert mono.lemma_pos_check(1.0 / (math.pi * k)).passed

    def test_domain(self):
        with pytest.raises(DomainError):
            bn.r_2_2n(0.0, 1)
        with pytest.raises(DomainError):
            bn.r_2_2n(1.0, 0)


def test_p1_p2_cm_acceptance_order():
    grid = mono.CheckGrid.default(n_max=6)
    assert mono.cm_check(lambda t: bn.p_kernel(t, 1), grid).passed
    assert mono.cm_check(lambda t: bn.p_kernel(t, 2), grid).passed
