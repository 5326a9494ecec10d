"""Stirling and Barnes double-Gamma remainder objects: the periodic kernel
Q(t), the remainder kernels p_n, and the even-indexed remainder integral
R_{2,2n}(w) = int e^(-wt) t^(2n) p_n(t) dt.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import quad, quad_to_inf
from ._series import zeta_even_cached
from .errors import DomainError
from .laplace import transform_cutoff
from .specfun import log_gamma
from .stieltjes import PeriodicTail, PiecewisePolynomial, RepresentingMeasure

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BarnesKernelParams:
    """Expansion half-order n and the series cap for the brute-force route."""

    n: int
    k_cap: int = 10_000

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be >= 1")
        if self.k_cap < 100:
            raise DomainError("k_cap must be >= 100")


def q_kernel(t):
    """Q(t) = (t - [t] - (t - [t])^2)/2, 1-periodic with values in [0, 1/8]."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("q_kernel needs t >= 0")
    u = t - np.floor(t)
    out = 0.5 * (u - u * u)
    return out if out.ndim else float(out)


# Q as a periodic representing measure of order 2: the Stirling remainder is
# exactly its Stieltjes transform.
_Q_MEASURE = RepresentingMeasure(
    order=2.0,
    tail=PeriodicTail(start=0.0, period=1.0,
                      profile=PiecewisePolynomial(np.array([0.0, 1.0]),
                                                  np.array([[0.0, 0.5, -0.5]]))))


def stirling_remainder(x):
    """(lhs, rhs) of

        log Gamma(x) - ((x - 1/2) log x - x + log(2 pi)/2)
            = int_0^inf Q(t)/(x+t)^2 dt.
    """
    if not x > 0:
        raise DomainError("need x > 0")
    lhs = log_gamma(x) - ((x - 0.5) * math.log(x) - x
                          + 0.5 * math.log(2.0 * math.pi))
    rhs = _Q_MEASURE(x)
    return lhs, rhs


def _aux_sums(a, m_max):
    """S1_m = sum_k k^(-2m)/(k^2+a^2) and S2_m = sum_k k^(-2m)/(k^2+a^2)^2
    for m = 0..m_max, elementwise over the array a.

    Small a: Taylor series in a^2 with even zeta values.  Otherwise the
    coth/csch^2 closed forms seed upward recurrences in m.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    small = a < 0.5
    s1 = np.empty((m_max + 1,) + a.shape)
    s2 = np.empty_like(s1)
    if small.any():
        asq = a[small] ** 2
        for m in range(m_max + 1):
            acc1 = np.zeros_like(asq)
            acc2 = np.zeros_like(asq)
            power = np.ones_like(asq)
            for i in range(0, 26):
                acc1 += power * ((-1) ** i) * zeta_even_cached(m + 1 + i)
                acc2 += power * ((-1) ** i) * (i + 1) * zeta_even_cached(m + 2 + i)
                power = power * asq
            s1[m][small] = acc1
            s2[m][small] = acc2
    big = ~small
    if big.any():
        ab = a[big]
        pa = math.pi * ab
        coth = 1.0 / np.tanh(pa)
        csch2 = 1.0 / np.sinh(pa) ** 2
        t1 = math.pi * coth / (2.0 * ab) - 1.0 / (2.0 * ab ** 2)
        t2 = (math.pi ** 2 * csch2 / (4.0 * ab ** 2)
              + math.pi * coth / (4.0 * ab ** 3) - 1.0 / (2.0 * ab ** 4))
        s1[0][big] = t1
        s2[0][big] = t2
        for m in range(1, m_max + 1):
            t1 = (zeta_even_cached(m) - t1) / ab ** 2
            t2 = (t1 - t2) / ab ** 2
            s1[m][big] = t1
            s2[m][big] = t2
    return s1, s2


def p_kernel(t, n=1):
    """The Barnes remainder kernel

        p_n(t) = (1/t^2) sum_k (2 pi k)^(1-2n) [ 4 pi k/(t^2+(2 pi k)^2)
                 + 8 pi k t/(t^2+(2 pi k)^2)^2
                 + ((2n-1)/(2 pi k)) 2t/(t^2+(2 pi k)^2) ],

    reduced to coth/csch^2 sums; accurate to ~1e-14 relative for all t > 0.
    """
    if n < 1 or int(n) != n:
        raise DomainError("n must be a positive integer")
    scalar = np.isscalar(t) or np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t <= 0):
        raise DomainError("p_kernel needs t > 0")
    a = t / _TWO_PI
    s1, s2 = _aux_sums(a, n)
    pref = _TWO_PI ** (-2.0 * n) / t ** 2
    val = pref * (2.0 * s1[n - 1] + (t / math.pi ** 2) * s2[n - 1]
                  + ((2.0 * n - 1.0) * t / (2.0 * math.pi ** 2)) * s1[n])
    return float(val[0]) if scalar else val


def p_kernel_series(t, params):
    """Brute-force k-series for p_n with a midpoint integral completing the
    k^(-2n) tail; the independent cross-check for p_kernel."""
    n = params.n
    t = float(t)
    if t <= 0:
        raise DomainError("p_kernel_series needs t > 0")

    def term(k):
        k = np.asarray(k, dtype=float)
        w = _TWO_PI * k
        den = t * t + w * w
        return w ** (1.0 - 2.0 * n) * (4.0 * math.pi * k / den
                                       + 8.0 * math.pi * k * t / den ** 2
                                       + (2.0 * n - 1.0) / w * 2.0 * t / den)

    k = np.arange(1.0, params.k_cap + 1.0)
    head = float(np.sum(term(k)))
    tail = quad_to_inf(term, params.k_cap + 0.5, abs_tol=1e-18, rel_tol=1e-12)
    return (head + tail) / (t * t)


def r_2_2n(w, n=1):
    """R_{2,2n}(w) = int_0^inf e^(-wt) t^(2n) p_n(t) dt, positive and
    decreasing in w."""
    if not w > 0:
        raise DomainError("need w > 0")
    if n < 1 or int(n) != n:
        raise DomainError("n must be a positive integer")
    t_hi = transform_cutoff(w)

    def integrand(t):
        return np.exp(-w * t) * t ** (2.0 * n) * p_kernel(t, n)

    seeds = [s / w for s in (1.0, 4.0, 12.0) if s / w < t_hi]
    return quad(integrand, 0.0, t_hi, abs_tol=1e-16, rel_tol=5e-14,
                points=seeds)


def barnes_g_limit(n=1):
    """lim_{t -> 0} t^2 p_n(t) = 2 (2 pi)^(-2n) zeta(2n); fixes the leading
    w -> inf decay R_{2,2n}(w) ~ barnes_g_limit(n)/w."""
    return 2.0 * _TWO_PI ** (-2.0 * n) * zeta_even_cached(n)
