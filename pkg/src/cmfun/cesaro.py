"""Iterated partial sums, the polynomial identity relating them to the
generating function, numerical checks of the representation hypotheses, and
three-way evaluation of sums a_n / (x+n)^lam (direct series, Stieltjes
measure, Laplace kernel)."""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._quadrature import quad, quad_to_inf
from ._series import alternating_sum, pochhammer_ratio_terms
from .errors import CapTooSmallError, DomainError, HypothesisViolationError
from .laplace import transform_cutoff
from .specfun import log_gamma
from .stieltjes import measure_cesaro, stieltjes_eval


@dataclass(frozen=True, eq=False)
class IteratedSums:
    """Table s[j][n] of j-fold cumulative sums of the prefix a[0..N]."""

    a: np.ndarray
    k: int
    table: np.ndarray

    def level(self, j):
        return self.table[j]


def iterate_sums(a, k):
    """s^(0) = cumsum(a), s^(j) = cumsum(s^(j-1)) up to depth k."""
    a = np.asarray(a, dtype=float)
    if k < 0 or int(k) != k:
        raise DomainError("k must be a nonnegative integer")
    table = np.empty((k + 1, len(a)))
    table[0] = np.cumsum(a)
    for j in range(1, k + 1):
        table[j] = np.cumsum(table[j - 1])
    return IteratedSums(a=a, k=int(k), table=table)


def lemma_s_check(a, k, N, x):
    """(lhs, rhs) of the partial-sum identity

        (1-x)^(k+1) sum_{n<=N} s_n^(k) x^n
            = sum_{n<=N} a_n x^n - x^(N+1) sum_{j<=k} s_N^(j) (1-x)^j.
    """
    if not 0 < x < 1:
        raise DomainError("x must lie in (0, 1)")
    a = np.asarray(a, dtype=float)
    if N >= len(a):
        raise DomainError("N exceeds the available prefix")
    s = iterate_sums(a[:N + 1], k)
    powers = x ** np.arange(N + 1)
    lhs = (1.0 - x) ** (k + 1) * float(np.sum(s.table[k] * powers))
    rhs = float(np.sum(a[:N + 1] * powers)) - x ** (N + 1) * float(
        np.sum(s.table[:, N] * (1.0 - x) ** np.arange(k + 1)))
    return lhs, rhs


@dataclass(frozen=True)
class HypothesesReport:
    """Verdicts for the three representation hypotheses; each one is
    'pass', 'fail' or 'inconclusive' (they are limit statements, probed on
    a finite prefix)."""

    nonneg: str
    decay: str
    summable: str
    n_probe: int

    @property
    def overall(self):
        verdicts = (self.nonneg, self.decay, self.summable)
        if any(v == "fail" for v in verdicts):
            return "fail"
        if all(v == "pass" for v in verdicts):
            return "pass"
        return "inconclusive"

    def to_dict(self):
        return {"nonneg": self.nonneg, "decay": self.decay,
                "summable": self.summable, "overall": self.overall,
                "n_probe": self.n_probe}


def hypotheses_check(seq, k, lam, n_probe=20_000_000):
    """Probe (i) s^(k) >= 0, (ii) s^(k)_n / n^lam -> 0, (iii)
    sum s^(k)_n / n^(1+lam) < inf on the prefix n <= n_probe.

    (ii) requires the windowed maximum of s/n^lam to drop by a factor 2 over
    the last decade; (iii) requires the partial sums to grow by less than
    1e-6 relative over the last decade (for the bounded-sum catalog this
    needs a prefix of order 10^7).
    """
    if n_probe < 1000:
        raise DomainError("n_probe must be >= 1000")
    coef = _as_coef(seq)
    s = np.asarray(coef(np.arange(n_probe + 1)), dtype=float)
    for _ in range(int(k) + 1):
        np.cumsum(s, out=s)
    scale = max(1.0, float(np.max(np.abs(s))))
    nonneg = "pass" if float(np.min(s)) >= -1e-12 * scale else "fail"

    def window_max(idx):
        lo = max(1, int(0.9 * idx))
        return float(np.max(np.abs(s[lo:idx + 1]))) / idx ** lam

    r_old = window_max(n_probe // 10)
    r_new = window_max(n_probe)
    if r_old == 0.0 and r_new == 0.0:
        decay = "pass"
    else:
        ratio = r_new / max(r_old, 1e-300)
        decay = "pass" if ratio <= 0.5 else ("fail" if ratio >= 0.9
                                             else "inconclusive")
    n = np.arange(1, n_probe + 1, dtype=float)
    terms = s[1:] / n ** (1.0 + lam)
    total = float(np.sum(terms))
    recent = float(np.sum(terms[n_probe // 10:]))
    if total <= 0:
        summable = "pass" if nonneg == "pass" else "inconclusive"
    else:
        growth = recent / total
        summable = "pass" if growth < 1e-6 else ("fail" if growth > 1e-2
                                                 else "inconclusive")
    return HypothesesReport(nonneg=nonneg, decay=decay, summable=summable,
                            n_probe=int(n_probe))


# ---------------------------------------------------------------------------
# named coefficient presets with closed generating functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SequencePreset:
    """Coefficients a_n with the closed form of sum a_n u^n at u = e^(-t)."""

    name: str
    coef: Callable
    gen: Callable
    default_lam: float = 1.0


def _sign(n):
    return np.where(np.asarray(n, dtype=np.int64) % 2 == 0, 1.0, -1.0)


def _alt_coef(n):
    return _sign(n)


def _prym_coef(n):
    sign = _sign(n)
    n = np.asarray(n, dtype=float)
    return sign * np.exp(-log_gamma(n + 1.0))


def _ones_coef(n):
    return np.ones_like(np.asarray(n, dtype=float))


def preset_sequence(key, a=0.5):
    """Presets: 'alternating', 'binomial-a' (parameter a), 'prym', 'ones'."""
    if key == "alternating":
        return SequencePreset("alternating", _alt_coef,
                              lambda u: 1.0 / (1.0 + u))
    if key == "binomial-a":
        if not 0 < a <= 1:
            raise DomainError("binomial parameter must be in (0, 1]")

        def coef(n):
            sign = _sign(n)
            n_int = np.asarray(n, dtype=np.int64)
            if n_int.size <= 128:
                table = pochhammer_ratio_terms(a, int(np.max(n_int)) + 1)
                return sign * table[n_int]
            if n_int[0] == 0 and n_int[-1] == n_int.size - 1:
                # contiguous range: one cumulative-product pass
                k = np.arange(1.0, n_int.size)
                mag = np.concatenate([[1.0], np.cumprod((a + k - 1.0) / k)])
                return sign * mag
            n_f = n_int.astype(float)
            mag = np.exp(log_gamma(n_f + a) - log_gamma(n_f + 1.0)
                         - math.lgamma(a))
            return sign * mag

        return SequencePreset("binomial-a", coef,
                              lambda u: (1.0 + u) ** (-a))
    if key == "prym":
        return SequencePreset("prym", _prym_coef, lambda u: np.exp(-u))
    if key == "ones":
        return SequencePreset("ones", _ones_coef,
                              lambda u: 1.0 / (1.0 - u), default_lam=2.0)
    raise DomainError(f"unknown sequence preset {key!r}")


PRESET_KEYS = ("alternating", "binomial-a", "prym", "ones")


def _as_coef(seq):
    if isinstance(seq, str):
        return preset_sequence(seq).coef
    if isinstance(seq, SequencePreset):
        return seq.coef
    if callable(seq):
        return seq
    arr = np.asarray(seq, dtype=float)
    return lambda n: arr[np.asarray(n, dtype=int)]


def kappa_eval(seq, k, t):
    """kappa(t) = t^(-(k+1)) sum a_n e^(-nt); closed generating function for
    presets, truncated series otherwise."""
    t = np.asarray(t, dtype=float)
    preset = seq if isinstance(seq, SequencePreset) else (
        preset_sequence(seq) if isinstance(seq, str) else None)
    if preset is not None:
        core = preset.gen(np.exp(-t))
    else:
        coef = _as_coef(seq)
        n_terms = int(min(50.0 / max(np.min(t), 1e-6), 2_000_000))
        if n_terms >= 2_000_000:
            raise CapTooSmallError("generic kappa series needs too many terms")
        ns = np.arange(n_terms + 1, dtype=float)
        core = np.sum(_as_coef(seq)(ns)[:, None]
                      * np.exp(-np.outer(ns, np.atleast_1d(t))), axis=0)
        core = core if t.ndim else float(core[0])
    return core / t ** (k + 1.0)


@dataclass(frozen=True)
class ThreeWayResult:
    direct: float
    stieltjes: float
    laplace: float

    @property
    def spread(self):
        vals = (self.direct, self.stieltjes, self.laplace)
        return max(vals) - min(vals)


def direct_series(seq, lam, x, cap=8192):
    """sum a_n/(x+n)^lam: accelerated when the signs alternate, brute force
    plus a midpoint tail when the coefficients are positive and smooth."""
    coef = _as_coef(seq)
    probe = coef(np.arange(64))
    signs = np.sign(probe[probe != 0.0])
    if len(signs) >= 8 and np.all(signs[::2] == signs[0]) and \
            np.all(signs[1::2] == -signs[0]):
        def term(n):
            return abs(float(coef(np.array([n]))[0])) * (x + n) ** (-lam)
        return float(signs[0]) * alternating_sum(term, n_terms=36)
    if np.all(probe > 0):
        ns = np.arange(cap, dtype=float)
        head = float(np.sum(coef(ns) * (x + ns) ** (-lam)))

        def g(n):
            return coef(n) * (x + np.asarray(n, dtype=float)) ** (-lam)

        tail = quad_to_inf(g, cap - 0.5, abs_tol=1e-16, rel_tol=1e-11)
        d = 0.125
        g1 = (float(g(np.array([cap - 0.5 + d]))[0])
              - float(g(np.array([cap - 0.5 - d]))[0])) / (2 * d)
        return head + tail + g1 / 24.0
    raise DomainError("direct series needs alternating or positive smooth "
                      "coefficients")


def series_eval_three_ways(seq, k, lam, x, cap=4096, n_probe=2_000_000,
                           skip_hypotheses=False):
    """(direct, stieltjes, laplace) evaluations of sum a_n/(x+n)^lam.

    The hypotheses are probed first and a failure raises; pass
    ``skip_hypotheses=True`` to override explicitly.
    """
    if not x > 0:
        raise DomainError("x must be positive")
    preset = seq if isinstance(seq, SequencePreset) else (
        preset_sequence(seq) if isinstance(seq, str) else None)
    coef = preset.coef if preset is not None else _as_coef(seq)
    if not skip_hypotheses:
        report = hypotheses_check(coef, k, lam, n_probe=n_probe)
        if report.overall == "fail":
            raise HypothesisViolationError(
                f"representation hypotheses fail: {report.to_dict()}")
    direct = direct_series(coef, lam, x)
    measure = measure_cesaro(coef, k, lam, cap=cap)
    stieltjes = stieltjes_eval(measure, x)
    t_hi = transform_cutoff(x)
    kappa_src = preset if preset is not None else coef

    def integrand(t):
        return np.exp(-x * t) * t ** (lam + k) * kappa_eval(kappa_src, k, t)

    laplace = quad(integrand, 0.0, t_hi, abs_tol=1e-15,
                   rel_tol=1e-12) / math.gamma(lam)
    return ThreeWayResult(direct=direct, stieltjes=stieltjes, laplace=laplace)
