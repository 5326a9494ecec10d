import json
import math

import numpy as np
import pytest

from cmfun import specfun as sf
from cmfun import stieltjes as st
from cmfun._quadrature import quad
from cmfun.errors import CapTooSmallError, DomainError

LOG2 = math.log(2.0)


def prym_seq(n):
    n = np.asarray(n, dtype=float)
    return (-1.0) ** n * np.exp(-sf.log_gamma(n + 1.0))


class TestPiecewisePolynomial:
    def test_eval_right_continuous(self):
        pp = st.PiecewisePolynomial(np.array([0.0, 1.0, 2.0]),
                                    np.array([[1.0], [3.0]]))
        assert pp(0.5) == 1.0
        assert pp(1.0) == 3.0          # right-continuity at breakpoints
        assert pp(2.5) == 0.0
        assert pp(-1.0) == 0.0

    def test_unbounded_row(self):
        pp = st.PiecewisePolynomial(np.array([0.0, 1.0]),
                                    np.array([[1.0], [2.0]]), unbounded=True)
        assert pp(10.0) == 2.0
        assert pp.mass() == math.inf

    def test_validation(self):
        with pytest.raises(DomainError):
            st.PiecewisePolynomial(np.array([1.0, 0.5]), np.array([[1.0]]))
        with pytest.raises(DomainError):
            st.PiecewisePolynomial(np.array([0.0, 1.0]),
                                   np.array([[1.0], [1.0]]))

    def test_laplace_matches_quadrature(self):
        pp = st.PiecewisePolynomial(np.array([0.0, 0.7, 2.0]),
                                    np.array([[0.5, 1.0, -0.2], [2.0, 0.0, 0.0]]))
        for t in (1e-4, 0.3, 4.0):
            oracle = quad(lambda s: np.exp(-t * s) * pp(s), 0.0, 2.0,
                          abs_tol=1e-14, points=[0.7])
            assert abs(float(pp.laplace(t)[0]) - oracle) < 1e-12


class TestConvolveBox:
    def test_triangle(self):
        pp = st.convolve_box(1.0, 1.0)
        assert pp(1.0) == pytest.approx(1.0, abs=1e-15)
        assert pp(0.25) == pytest.approx(0.25, abs=1e-15)

    def test_plateau(self):
        pp = st.convolve_box(0.5, 1.3)
        assert pp(0.9) == pytest.approx(0.5, abs=1e-15)

    def test_mass(self):
        assert st.convolve_box(0.5, 1.3).mass() == pytest.approx(0.65, abs=1e-14)

    def test_degenerate(self):
        assert st.convolve_box(0.0, 1.0).mass() == 0.0


class TestMeasureAlternating:
    def test_two_term(self):
        m = st.measure_alternating([0.0, 1.0], 1.0)
        x = 1.7
        assert st.stieltjes_eval(m, x) == pytest.approx(
            1.0 / x - 1.0 / (x + 1.0), abs=1e-14)

    def test_even_truncation_has_unbounded_tail(self):
        m = st.measure_alternating([0.0, 1.0, 2.0], 1.0)
        assert m.density.unbounded
        assert m.density(2.5) == 1.0
        x = 1.7
        expected = 1.0 / x - 1.0 / (x + 1.0) + 1.0 / (x + 2.0)
        assert st.stieltjes_eval(m, x) == pytest.approx(expected, abs=1e-14)

    def test_infinite_matches_beta(self):
        m = st.measure_alternating(lambda n: float(n), 1.0)
        assert m.density(0.5) == 1.0 and m.density(1.5) == 0.0
        assert m.density(2.5) == 1.0
        for x in np.geomspace(0.5, 50.0, 25):
            assert abs(st.stieltjes_eval(m, x) - sf.nielsen_beta(x)) <= 1e-8

    def test_fractional_order(self):
        lam = 0.6
        m = st.measure_alternating(lambda n: float(n), lam)
        assert m.order == pytest.approx(lam + 1.0)
        x = 1.3
        direct = sum((-1.0) ** n * (x + n) ** (-lam) for n in range(200000))
        direct += 0.5 * (x + 200000.0) ** (-lam)
        assert abs(st.stieltjes_eval(m, x) - direct) < 1e-7

    def test_not_nondecreasing_raises(self):
        with pytest.raises(DomainError):
            st.measure_alternating([0.0, 2.0, 1.0], 1.0)
        with pytest.raises(DomainError):
            st.measure_alternating([0.0, 1.0], 1.5)


class TestAtoms:
    def test_point_mass_at_zero(self):
        m = st.RepresentingMeasure(order=1.0, atoms=((0.0, 1.0),))
        assert st.stieltjes_eval(m, 2.0) == pytest.approx(0.5, abs=1e-15)

    def test_integer_atoms_trigamma(self):
        m = st.measure_integer_atoms()
        assert abs(st.stieltjes_eval(m, 1.0) - math.pi ** 2 / 6) <= 1e-10

    def test_atom_validation(self):
        with pytest.raises(DomainError):
            st.RepresentingMeasure(order=1.0, atoms=((1.0, 1.0), (0.5, 1.0)))
        with pytest.raises(DomainError):
            st.RepresentingMeasure(order=1.0, atoms=((0.5, -1.0),))


class TestKernelKappa:
    def test_beta_measure_kernel(self):
        m = st.measure_alternating(lambda n: float(n), 1.0)
        kappa = st.kernel_kappa(m)
        for t in (0.01, 0.1, 1.0, 5.0):
            assert abs(kappa(t) - 1.0 / (t * (1.0 + math.exp(-t)))) <= 1e-12

    def test_integer_atoms_kernel(self):
        kappa = st.kernel_kappa(st.measure_integer_atoms())
        for t in (0.005, 0.3, 2.0):
            assert abs(kappa(t) - 1.0 / -math.expm1(-t)) <= 1e-9 / t

    def test_single_atom_kernel(self):
        m = st.RepresentingMeasure(order=1.0, atoms=((0.7, 2.5),))
        kappa = st.kernel_kappa(m)
        assert kappa(1.3) == pytest.approx(2.5 * math.exp(-0.7 * 1.3), abs=1e-15)

    def test_kernel_reproduces_f(self):
        m = st.measure_alternating(lambda n: float(n), 1.0)
        for x in (0.7, 3.0):
            assert abs(st.stieltjes_via_kernel(m, x)
                       - sf.nielsen_beta(x)) <= 1e-8


class TestGammaRatioMeasure:
    @pytest.mark.parametrize("a,b", [(0.5, 1.3), (1.0, 1.0), (0.5, 2.0)])
    def test_reproduces_log_ratio(self, a, b):
        m = st.measure_gamma_ratio(a, b)
        for x in (0.5, 1.0, 2.0, 5.0, 10.0):
            assert abs(st.stieltjes_eval(m, x)
                       - sf.gamma_ratio_log(x, a, b)) <= 1e-7

    def test_density_matches_direct_sum(self):
        a, b = 0.5, 1.3
        m = st.measure_gamma_ratio(a, b)
        ts = np.linspace(0.01, 10.0, 777)
        direct = np.zeros_like(ts)
        for k in range(11):
            u = ts - k
            direct += np.where(u > 0, np.clip(np.minimum(np.minimum(u, a),
                                                         a + b - u), 0, None), 0.0)
        assert np.max(np.abs(m.density(ts) - direct)) <= 1e-12

    def test_density_b_one_min_formula(self):
        a = 0.4
        m = st.measure_gamma_ratio(a, 1.0)
        for t in (0.2, 1.3, 2.7, 5.5):
            expected = sum(min(t - j, a, a + 1.0 - (t - j))
                           for j in range(int(t) + 1) if 0 < t - j < a + 1.0)
            assert m.density(t) == pytest.approx(expected, abs=1e-12)

    def test_density_nonnegative(self):
        m = st.measure_gamma_ratio(0.5, 1.3)
        ts = np.linspace(1e-6, 10.0, 1000)
        assert np.min(m.density(ts)) >= 0.0

    def test_cap_too_small(self):
        with pytest.raises(CapTooSmallError):
            st.measure_gamma_ratio(0.5, 1.3, cap=10)


class TestGenus1Measure:
    def direct(self, zeros, a, b, x):
        return math.fsum(
            math.log1p((x + a) / z) + math.log1p((x + b) / z)
            - math.log1p(x / z) - math.log1p((x + a + b) / z) for z in zeros)

    @pytest.mark.parametrize("zeros,a,b", [
        ((1.0, 2.0, 3.0), 0.5, 0.5),
        ((0.5,), 1.0, 1.0),
        ((1.0, 4.0, 9.0), 0.3, 1.7),
    ])
    def test_matches_log_product(self, zeros, a, b):
        m = st.measure_genus1_log_ratio(zeros, a, b)
        for x in (0.5, 1.0, 4.0, 20.0):
            assert abs(st.stieltjes_eval(m, x)
                       - self.direct(zeros, a, b, x)) <= 1e-8

    def test_decay_at_infinity(self):
        m = st.measure_genus1_log_ratio((1.0,), 1.0, 1.0)
        assert abs(st.stieltjes_eval(m, 1e4)) <= 1e-3

    def test_degenerate(self):
        m = st.measure_genus1_log_ratio((1.0,), 0.0, 1.0)
        assert st.stieltjes_eval(m, 2.0) == 0.0


class TestGammaReciprocalMeasure:
    def test_value(self):
        s = 0.5
        m = st.measure_gamma_reciprocal_ratio(s)
        lhs = st.stieltjes_eval(m, 1.0) / math.gamma(s + 1.0)
        assert abs(lhs - math.gamma(1.0) / math.gamma(2.5)) <= 1e-8

    def test_density_cells(self):
        s = 0.3
        m = st.measure_gamma_reciprocal_ratio(s)
        assert m.density(0.5) == pytest.approx(1.0, abs=1e-15)
        assert m.density(1.5) == pytest.approx(1.0 - s, abs=1e-15)

    @pytest.mark.parametrize("s", [0.3, 0.5, 0.8])
    def test_reproduces_ratio(self, s):
        m = st.measure_gamma_reciprocal_ratio(s)
        for x in (0.5, 1.0, 3.0, 10.0):
            target = math.exp(sf.log_gamma(x) - sf.log_gamma(x + s + 1.0))
            assert abs(st.stieltjes_eval(m, x) / math.gamma(s + 1.0)
                       - target) <= 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            st.measure_gamma_reciprocal_ratio(1.2)


class TestCesaroMeasure:
    def test_alternating_recovers_beta_measure(self):
        m = st.measure_cesaro(lambda n: (-1.0) ** np.asarray(n), 0, 1.0)
        assert m.density(0.5) == 1.0
        assert m.density(1.5) == 0.0
        assert m.density(2.5) == 1.0
        assert abs(st.stieltjes_eval(m, 1.0) - LOG2) <= 1e-8

    def test_prym_density_and_value(self):
        m = st.measure_cesaro(prym_seq, 0, 1.0)
        for mm in range(5):
            expected = math.fsum((-1.0) ** j / math.factorial(j)
                                 for j in range(mm + 1))
            assert m.density(mm + 0.5) == pytest.approx(expected, abs=1e-14)
        assert abs(st.stieltjes_eval(m, 1.0) - (1.0 - math.exp(-1.0))) <= 1e-8

    def test_order(self):
        m = st.measure_cesaro(prym_seq, 0, 1.5)
        assert m.order == pytest.approx(2.5)

    def test_k_one_rows(self):
        # a = (1, 0, 0, ...), k = 1: density is lam (lam+1) t on every cell
        m = st.measure_cesaro(lambda n: (np.asarray(n) == 0).astype(float),
                              1, 1.0)
        ts = np.array([0.4, 1.7, 3.2])
        assert np.max(np.abs(m.density(ts) - 2.0 * ts)) <= 1e-12


class TestEquivalenceOfRepresentations:
    def catalog(self):
        yield st.measure_alternating(lambda n: float(n), 1.0)
        yield st.measure_integer_atoms()
        yield st.measure_gamma_ratio(0.5, 1.3)
        yield st.measure_genus1_log_ratio((1.0, 2.0, 3.0), 0.5, 0.5)
        yield st.measure_gamma_reciprocal_ratio(0.5)
        yield st.measure_cesaro(prym_seq, 0, 1.0)

    def test_sokal_identity(self):
        xs = np.geomspace(0.5, 20.0, 10)
        for m in self.catalog():
            for x in xs:
                direct = st.stieltjes_eval(m, x)
                via_kernel = st.stieltjes_via_kernel(m, x)
                assert abs(direct - via_kernel) <= 1e-7, (m.order, x)

    def test_densities_nonnegative_sampled(self):
        for m in self.catalog():
            if m.density is None:
                continue
            hi = m.density.breakpoints[-1]
            ts = np.linspace(1e-9, hi, 1000)
            assert float(np.min(m.density(ts))) >= -1e-12

    def test_order_monotonicity_identity(self):
        # f(x) = order * int mu([0,t]) (x+t)^(-order-1) dt for the
        # atom-free members with computable cumulatives
        x = 1.3
        for m in (st.measure_alternating(lambda n: float(n), 1.0),
                  st.measure_gamma_ratio(0.5, 1.3)):
            order = m.order
            T = 400.0
            head = sum(quad(lambda t: st.measure_cumulative(m, t)
                            * (x + t) ** (-order - 1.0),
                            0.5 * k, 0.5 * (k + 1), abs_tol=1e-15,
                            rel_tol=1e-11) for k in range(800))
            # affine tail model through the period-averaged cumulative
            c_mid = quad(lambda t: st.measure_cumulative(m, t), T, T + 2.0,
                         abs_tol=1e-13) / 2.0
            slope = (quad(lambda t: st.measure_cumulative(m, t),
                          T + 2.0, T + 4.0, abs_tol=1e-13) / 2.0 - c_mid) / 2.0
            t_mid = T + 1.0
            tail = quad(lambda t: (c_mid + slope * (t - t_mid))
                        * (x + t) ** (-order - 1.0), T, 1e7,
                        rel_tol=1e-10, limit=4000)
            assert abs(order * (head + tail) - st.stieltjes_eval(m, x)) <= 1e-6

    def test_negative_density_rejected(self):
        pp = st.PiecewisePolynomial(np.array([0.0, 1.0]), np.array([[-1.0]]))
        with pytest.raises(DomainError):
            st.RepresentingMeasure(order=2.0, density=pp)


class TestSerialization:
    def roundtrip(self, m):
        return st.RepresentingMeasure.from_dict(json.loads(json.dumps(m.to_dict())))

    def test_field_names(self):
        m = st.measure_alternating([0.0, 1.0], 1.0)
        d = m.to_dict()
        for key in ("breakpoints", "coeffs", "atoms", "order", "constant"):
            assert key in d

    def test_roundtrip_catalog(self):
        measures = [
            st.measure_alternating(lambda n: float(n), 1.0),
            st.measure_integer_atoms(),
            st.measure_gamma_ratio(0.5, 1.3),
            st.measure_gamma_reciprocal_ratio(0.5),
            st.measure_cesaro(lambda n: (-1.0) ** np.asarray(n), 0, 1.0),
            st.measure_cesaro(prym_seq, 0, 1.0),
        ]
        for m in measures:
            m2 = self.roundtrip(m)
            for x in (0.5, 1.1, 7.0):
                assert st.stieltjes_eval(m2, x) == pytest.approx(
                    st.stieltjes_eval(m, x), rel=1e-14, abs=1e-15)
