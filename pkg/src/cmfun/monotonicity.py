"""Grid-based property checkers: complete monotonicity via higher-order
finite differences, logarithmic complete monotonicity, Horn fractional
powers, Pick functions on the upper half plane, and the explicit
counterexample construction for generalized Stieltjes orders above 2.

A checker can refute a property (witnesses are genuine sign violations well
beyond the rounding slack) or corroborate it on the grid; it never proves it.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class CheckGrid:
    """Evaluation grid: log-spaced points, step h = x * h_factor, difference
    orders up to n_max."""

    x_points: np.ndarray
    h_factor: float = 1.0 / 16.0
    n_max: int = 8

    def __post_init__(self):
        pts = np.asarray(self.x_points, dtype=float)
        object.__setattr__(self, "x_points", pts)
        if np.any(pts <= 0) or np.any(np.diff(pts) <= 0):
            raise DomainError("x_points must be positive and increasing")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if not self.h_factor > 0:
            raise DomainError("h_factor must be positive")

    @staticmethod
    def default(n_points=32, lo=0.05, hi=100.0, n_max=8):
        return CheckGrid(np.geomspace(lo, hi, n_points), n_max=n_max)


@dataclass(frozen=True)
class Witness:
    x: float
    n: int
    value: float
    slack: float

    def to_dict(self):
        return {"x": self.x, "n": self.n, "value": self.value,
                "slack": self.slack}


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a grid check; fails iff some witness value < -slack."""

    passed: bool
    worst_margin: float
    witnesses: tuple = ()
    sup_im: float = None
    inf_im: float = None
    label: str = ""

    def to_dict(self):
        d = {"verdict": "pass" if self.passed else "fail",
             "worst_margin": self.worst_margin,
             "witnesses": [w.to_dict() for w in self.witnesses]}
        if self.sup_im is not None:
            d["sup_im"] = self.sup_im
            d["inf_im"] = self.inf_im
        if self.label:
            d["label"] = self.label
        return d


def cm_check(f, grid=None, eval_noise=None, label=""):
    """Check (-1)^n-alternating finite differences of f for nonnegativity.

    For each grid point x and n <= n_max the quantity
        sum_j (-1)^j C(n, j) f(x + j h)
    is nonnegative when f is completely monotonic; it must stay above
    -slack with slack = 16 * 2^n * eps * max_j |f(x + j h)|.  ``eval_noise``
    widens eps for functions that are themselves computed by quadrature.
    """
    grid = grid or CheckGrid.default()
    eps = eval_noise if eval_noise is not None else _EPS
    witnesses = []
    worst = math.inf
    for x in grid.x_points:
        h = x * grid.h_factor
        vals = [float(f(x + j * h)) for j in range(grid.n_max + 1)]
        scale = max(abs(v) for v in vals)
        for n in range(grid.n_max + 1):
            diff = math.fsum((-1) ** j * math.comb(n, j) * vals[j]
                             for j in range(n + 1))
            slack = 16.0 * 2 ** n * eps * scale
            worst = min(worst, diff + slack)
            if diff < -slack:
                witnesses.append(Witness(float(x), n, diff, slack))
    return CheckReport(passed=not witnesses, worst_margin=worst,
                       witnesses=tuple(witnesses), label=label)


def lcm_check(f, grid=None, df=None, eval_noise=None, label=""):
    """Logarithmic complete monotonicity: f > 0 and -f'/f completely
    monotonic.  With no analytic derivative, a central difference with step
    x * 1e-6 is used and the rounding slack widened accordingly."""
    grid = grid or CheckGrid.default()
    witnesses = []
    for x in grid.x_points:
        h = x * grid.h_factor
        for j in range(grid.n_max + 1):
            v = float(f(x + j * h))
            if not v > 0:
                witnesses.append(Witness(float(x + j * h), 0, v, 0.0))
    if witnesses:
        return CheckReport(passed=False,
                           worst_margin=min(w.value for w in witnesses),
                           witnesses=tuple(witnesses), label=label)
    if df is not None:
        def g(x):
            return -df(x) / f(x)
        noise = eval_noise if eval_noise is not None else _EPS
    else:
        def g(x):
            d = x * 1e-6
            return -(f(x + d) - f(x - d)) / (2.0 * d) / f(x)
        noise = eval_noise if eval_noise is not None else 1e-9
    return cm_check(g, grid, eval_noise=noise, label=label)


DEFAULT_HORN_ALPHAS = (0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 2.0)


def horn_check(f, alphas=DEFAULT_HORN_ALPHAS, grid=None, eval_noise=None,
               label=""):
    """f^alpha completely monotonic for each alpha; aggregate verdict."""
    grid = grid or CheckGrid.default()
    witnesses = []
    worst = math.inf
    for alpha in alphas:
        rep = cm_check(lambda x: f(x) ** alpha, grid, eval_noise=eval_noise)
        worst = min(worst, rep.worst_margin)
        witnesses.extend(rep.witnesses)
    return CheckReport(passed=not witnesses, worst_margin=worst,
                       witnesses=tuple(witnesses), label=label)


def pick_region(re_max=20.0, im_max=20.0, n=40, exclusion=0.1):
    """Grid on [-re_max, re_max] x (0, im_max] minus a neighborhood of the
    cut (-inf, 0]."""
    res = np.linspace(-re_max, re_max, n)
    ims = np.linspace(im_max / n, im_max, n)
    pts = []
    for re in res:
        for im in ims:
            dist = abs(im) if re <= 0 else math.hypot(re, im)
            if dist >= exclusion:
                pts.append(complex(re, im))
    return pts


def pick_check(h, re_max=20.0, im_max=20.0, n=40, exclusion=0.1,
               floor=-1e-10, label=""):
    """Im h >= floor on the upper-half-plane region; reports the Im range."""
    pts = pick_region(re_max, im_max, n, exclusion)
    witnesses = []
    sup_im = -math.inf
    inf_im = math.inf
    worst = math.inf
    for z in pts:
        try:
            val = complex(h(z))
        except Exception as exc:  # evaluation failures reported per point
            witnesses.append(Witness(float(z.real), 0, math.nan, float(z.imag)))
            continue
        im = val.imag
        sup_im = max(sup_im, im)
        inf_im = min(inf_im, im)
        worst = min(worst, im - floor)
        if im < floor:
            witnesses.append(Witness(float(z.real), 0, im, float(z.imag)))
    return CheckReport(passed=not witnesses, worst_margin=worst,
                       witnesses=tuple(witnesses), sup_im=sup_im,
                       inf_im=inf_im, label=label)


@dataclass(frozen=True)
class Counterexample:
    c: float
    z_c: complex
    residual: float


def find_lcm_counterexample(r):
    """A zero of g_c(z) = (c/(1+c)) z^(-r) + (1/(1+c)) (z+1)^(-r) in the
    right half plane, for r > 2.

    The map z/(z+1) sends the right half plane onto the disk |w - 1/2| < 1/2;
    w = rho e^(i pi / r) with rho = 0.8 cos(pi/r) lies inside, so w^r = -c
    with c = rho^r and z_c = w/(1-w) gives g_c(z_c) = 0.  A function with a
    right-half-plane zero cannot be logarithmically completely monotonic.
    """
    if not r > 2:
        raise DomainError("r must exceed 2")
    rho = 0.8 * math.cos(math.pi / r)
    w = rho * cmath.exp(1j * math.pi / r)
    c = rho ** r
    z_c = w / (1.0 - w)
    g = (c / (1 + c)) * z_c ** (-r) + (1 / (1 + c)) * (z_c + 1.0) ** (-r)
    return Counterexample(c=c, z_c=z_c, residual=abs(g))


def lemma_pos_check(c, t_max=50.0, n_points=2000, floor=-1e-12, label=""):
    """h(t) = t - sin t + c (1 - cos t - t sin(t)/2) >= 0 on (0, t_max]."""
    if not 0 <= c <= 1:
        raise DomainError("c must lie in [0, 1]")
    ts = np.linspace(t_max / n_points, t_max, n_points)
    vals = ts - np.sin(ts) + c * (1.0 - np.cos(ts) - 0.5 * ts * np.sin(ts))
    worst = float(np.min(vals))
    witnesses = tuple(Witness(float(t), 0, float(v), -floor)
                      for t, v in zip(ts, vals) if v < floor)
    return CheckReport(passed=not witnesses, worst_margin=worst - floor,
                       witnesses=witnesses, label=label)


def conjugate_symmetry_spread(h, zs):
    """max |h(conj z) - conj h(z)| over the sample points."""
    return max(abs(complex(h(z.conjugate())) - complex(h(z)).conjugate())
               for z in zs)
