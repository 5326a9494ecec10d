"""Series helpers: acceleration of alternating sums, Bernoulli/zeta tables."""

import math

import numpy as np

# B_2, B_4, ..., B_16 as exact ratios; enough for the asymptotic expansions
# used in this package (arguments are always shifted to Re >= 12 first).
BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)


def zeta_even(m):
    """zeta(2m) for integer m >= 1, accurate to ~1e-16."""
    s = 2 * m
    k = np.arange(1.0, 100.0)
    head = float(np.sum(k ** (-s)))
    # Euler-Maclaurin tail from K=100
    K = 100.0
    tail = K ** (1 - s) / (s - 1) + 0.5 * K ** (-s) + s / 12.0 * K ** (-s - 1) \
        - s * (s + 1) * (s + 2) / 720.0 * K ** (-s - 3)
    return head + tail


_ZETA_EVEN = {m: zeta_even(m) for m in range(1, 41)}


def zeta_even_cached(m):
    return _ZETA_EVEN[m] if m in _ZETA_EVEN else zeta_even(m)


def alternating_sum(term, n_terms=28):
    """Accelerated value of sum_{k>=0} (-1)^k term(k).

    Chebyshev-polynomial acceleration; for totally monotone term sequences the
    error decays like (3 + sqrt(8))^(-n_terms), so the default 28 terms reach
    full double precision.
    """
    d = (3.0 + math.sqrt(8.0)) ** n_terms
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n_terms):
        c = b - c
        s += c * term(k)
        b = (k + n_terms) * (k - n_terms) * b / ((k + 0.5) * (k + 1.0))
    return s / d


def alternating_sum_direct(term, abs_tol, max_terms):
    """Plain alternating summation with the first-omitted-term bound.

    Terms are paired to keep the partial sums monotone; raises no error but
    returns (value, bound) so the caller can decide whether the bound is
    acceptable.
    """
    total = 0.0
    k = 0
    bound = math.inf
    while k < max_terms:
        t0 = term(k)
        t1 = term(k + 1)
        total += t0 - t1
        bound = term(k + 2)
        if bound < abs_tol:
            break
        k += 2
    return total, bound


def euler_tail(terms):
    """Sum of an alternating-decaying tail given its leading terms.

    ``terms`` holds t_0, t_1, ... with signs included (t_j alternating).
    Repeated averaging of the partial sums; returns the converged diagonal.
    """
    partial = np.cumsum(np.asarray(terms, dtype=float))
    row = partial
    best = row[-1]
    for _ in range(len(terms) - 1):
        row = 0.5 * (row[1:] + row[:-1])
        best = row[-1]
        if len(row) >= 2 and abs(row[-1] - row[-2]) < 1e-17 * (1 + abs(row[-1])):
            break
    return best


def pochhammer_ratio_terms(a, n_max):
    """Array of (a)_n / n! for n = 0..n_max-1 via a stable running product."""
    out = np.empty(n_max)
    out[0] = 1.0
    for n in range(1, n_max):
        out[n] = out[n - 1] * (a + n - 1) / n
    return out
