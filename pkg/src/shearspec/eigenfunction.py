"""Matched closed-form eigenfunctions of the sheared wells.

For x >= 0 the solution is alpha_plus * R(x) and for x < 0 it is
alpha_minus * L(|x|), with

    linear:     R = Ai(g x + ap),  L = Ai(g' t + am),  g = (k nu)^(1/3)
    oscillator: R = D_s(c x),      L = D_t(c' t),      c = sqrt(2) k^(1/4) sqrt(nu)

(see ``spectrum`` for ap, am, s, t).  The ratio alpha_minus/alpha_plus comes
from matching the value at 0, or the slope when the left value is the smaller
of the two; both agree at an eigenvalue.  Beyond the stored tail cutoffs the
function is returned as 0.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import MatchingError, NormalizationError, ResolutionError
from .family import ShearParam, potential_value, turning_points
from .quadrature import integrate
from .specfun import airy_arrays, pcf_d_arrays

TAIL_EPS = 1e-15
MATCH_FLOOR = 1e-120
_SAMPLES = 4000
_QUAD_RTOL = 1e-13


@dataclass(frozen=True)
class _Branch:
    order: int
    scale: float  # g or c
    shift: float  # Airy argument at t = 0; unused for the oscillator
    sigma: float  # PCF index; unused for the linear well

    def __call__(self, t):
        """(value, d/dt) of the unit-amplitude branch at t >= 0."""
        t = np.asarray(t, dtype=float)
        if self.order == 1:
            ai, aip, _, _ = airy_arrays(self.scale * t + self.shift)
            return ai.reshape(t.shape), (self.scale * aip).reshape(t.shape)
        d, dp, _, _ = pcf_d_arrays(self.sigma, self.scale * t)
        return d.reshape(t.shape), (self.scale * dp).reshape(t.shape)

    def far_limit(self):
        # generous outer point, inside the kernels' declared ranges
        if self.order == 1:
            return max(14.0 - self.shift, 1e-3) / self.scale
        zt = 2.0 * math.sqrt(max(self.sigma, 0.0) + 0.5)
        return min(40.0, zt + 12.0) / self.scale


def _branches(fam, s, E):
    k = fam.k
    if fam.order == 1:
        right = _Branch(1, (k * s.nu) ** (1.0 / 3.0), -E / (k * s.nu) ** (2.0 / 3.0), 0.0)
        if s.is_dirichlet:
            return right, None
        mu = s.nu_conjugate
        return right, _Branch(1, (k * mu) ** (1.0 / 3.0), -E / (k * mu) ** (2.0 / 3.0), 0.0)
    root = math.sqrt(2.0) * k ** 0.25
    right = _Branch(2, root * math.sqrt(s.nu), 0.0, E / s.nu - 0.5)
    if s.is_dirichlet:
        return right, None
    mu = s.nu_conjugate
    return right, _Branch(2, root * math.sqrt(mu), 0.0, E / mu - 0.5)


@dataclass(frozen=True)
class PiecewiseEigenfunction:
    family: object
    nu: float
    E: float
    alpha_plus: float
    alpha_minus: float
    norm_constant: float
    tail_cutoffs: tuple
    n: int = -1
    peak: float = field(default=math.nan, compare=False)
    _right: _Branch = field(default=None, repr=False, compare=False)
    _left: _Branch = field(default=None, repr=False, compare=False)

    @property
    def shear(self):
        return ShearParam(self.nu)

    @property
    def eps(self):
        return self.family.to_reduced(self.E)

    def _eval(self, x, deriv=False):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        x_min, x_max = self.tail_cutoffs
        rmask = (x >= 0.0) & (x <= x_max)
        if np.any(rmask):
            v, d = self._right(x[rmask])
            out[rmask] = self.alpha_plus * (d if deriv else v)
        if self._left is not None:
            lmask = (x < 0.0) & (x >= x_min)
            if np.any(lmask):
                v, d = self._left(-x[lmask])
                out[lmask] = self.alpha_minus * (-d if deriv else v)
        return out

    def __call__(self, x):
        out = self._eval(x)
        return float(out) if out.ndim == 0 else out

    def derivative(self, x):
        out = self._eval(x, deriv=True)
        return float(out) if out.ndim == 0 else out

    def one_sided_at_zero(self):
        """((psi(0-), psi'(0-)), (psi(0+), psi'(0+))) from the branch kernels."""
        v, d = self._right(np.array([0.0]))
        right = (self.alpha_plus * v[0], self.alpha_plus * d[0])
        if self._left is None:
            return (0.0, right[1]), right
        v, d = self._left(np.array([0.0]))
        return (self.alpha_minus * v[0], -self.alpha_minus * d[0]), right

    def matching_residuals(self):
        """Value and slope jumps at 0, relative to max|psi| and max|psi'|."""
        (vl, dl), (vr, dr) = self.one_sided_at_zero()
        xs = self.sample_grid()
        dmax = np.max(np.abs(self.derivative(xs)))
        if self._left is None:
            return abs(vr) / self.peak, 0.0
        return abs(vr - vl) / self.peak, abs(dr - dl) / dmax

    def sample_grid(self, m=_SAMPLES):
        x_min, x_max = self.tail_cutoffs
        right = np.linspace(0.0, x_max, m)
        if x_min >= 0.0:
            return right
        return np.concatenate([np.linspace(x_min, 0.0, m, endpoint=False), right])

    def pieces(self):
        """Integration breakpoints: cutoffs, turning points and 0."""
        x_min, x_max = self.tail_cutoffs
        tp = turning_points(self.family, self.shear, self.eps)
        pts = [x_min, 0.0, x_max]
        if x_min < tp.a < 0.0:
            pts.append(tp.a)
        if 0.0 < tp.b < x_max:
            pts.append(tp.b)
        pts = sorted(set(pts))
        return list(zip(pts[:-1], pts[1:]))


def _cutoff(branch, amp, t_turn, ref_peak):
    t_far = max(branch.far_limit(), 1.01 * t_turn)
    t = np.linspace(t_turn, t_far, 2000)
    v, _ = branch(t)
    big = np.flatnonzero(np.abs(amp * v) >= TAIL_EPS * ref_peak)
    if big.size == 0:
        return t_turn
    i = min(big[-1] + 1, t.size - 1)
    return t[i]


def build(fam, s, level):
    """Matched, L2-normalised eigenfunction for a converged level."""
    E = level.E
    right, left = _branches(fam, s, E)
    v0r, d0r = (a[0] for a in right(np.array([0.0])))
    if left is None:
        amp_minus = 0.0
    else:
        v0l, d0l = (a[0] for a in left(np.array([0.0])))
        # slope on the left side is -d0l (t = -x)
        if abs(v0l) * left.scale >= abs(d0l):
            if abs(v0l) < MATCH_FLOOR:
                raise MatchingError(f"left branch value {v0l} too small to match at E={E}")
            amp_minus = v0r / v0l
        else:
            if abs(d0l) < MATCH_FLOOR:
                raise MatchingError(f"left branch slope {d0l} too small to match at E={E}")
            amp_minus = -d0r / d0l

    tp = turning_points(fam, s, fam.to_reduced(E))
    probe_r = np.linspace(0.0, right.far_limit(), 2000)
    peak = np.max(np.abs(right(probe_r)[0]))
    if left is not None:
        probe_l = np.linspace(0.0, left.far_limit(), 2000)
        peak = max(peak, np.max(np.abs(amp_minus * left(probe_l)[0])))
    x_max = _cutoff(right, 1.0, tp.b, peak)
    x_min = -_cutoff(left, amp_minus, -tp.a, peak) if left is not None else 0.0

    raw = PiecewiseEigenfunction(fam, s.nu, E, 1.0, amp_minus, 1.0, (x_min, x_max), level.n,
                                 1.0, right, left)
    total = 0.0
    for lo, hi in raw.pieces():
        total += integrate(lambda x: raw(x) ** 2, lo, hi, tol=1e-300, rtol=_QUAD_RTOL).value
    if not (total > 0.0 and math.isfinite(total)):
        raise NormalizationError(f"eigenfunction at E={E} has norm {total}")
    c = 1.0 / math.sqrt(total)
    # sign convention: positive at the right turning point (outermost lobe)
    if raw(tp.b) < 0.0:
        c = -c
    psi = PiecewiseEigenfunction(fam, s.nu, E, c, c * amp_minus, abs(c), (x_min, x_max), level.n,
                                 1.0, right, left)
    pk = float(np.max(np.abs(psi(psi.sample_grid()))))
    return PiecewiseEigenfunction(fam, s.nu, E, c, c * amp_minus, abs(c), (x_min, x_max), level.n,
                                  pk, right, left)


def evaluate(psi, x):
    """Normalised psi(x); 0 beyond the tail cutoffs."""
    return psi(x)


def expectation(psi, g):
    """int g(x) psi(x)^2 dx over the support."""
    total = 0.0
    for lo, hi in psi.pieces():
        total += integrate(lambda x: g(x) * psi(x) ** 2, lo, hi, tol=1e-300, rtol=_QUAD_RTOL).value
    return total


def overlap(psi1, psi2):
    """<psi1, psi2> over the union of supports."""
    lo = min(psi1.tail_cutoffs[0], psi2.tail_cutoffs[0])
    hi = max(psi1.tail_cutoffs[1], psi2.tail_cutoffs[1])
    total = 0.0
    for a, b in ((lo, 0.0), (0.0, hi)):
        if b > a:
            total += integrate(lambda x: psi1(x) * psi2(x), a, b, tol=1e-14, rtol=1e-12).value
    return total


def node_positions(psi, m=_SAMPLES):
    """Interior sign changes of psi, refined by Brent's method."""
    xs = psi.sample_grid(m)
    v = psi(xs)
    keep = np.abs(v) > 1e-9 * psi.peak
    xs, v = xs[keep], v[keep]
    flips = np.flatnonzero(np.sign(v[:-1]) != np.sign(v[1:]))
    nodes = [brentq(psi, xs[i], xs[i + 1], xtol=1e-14) for i in flips]
    for a, b in zip(nodes, nodes[1:]):
        if b - a < 1e-9:
            raise ResolutionError(f"nodes at {a} and {b} are not resolved")
    return np.array(nodes)


def count_nodes(psi):
    """Number of strict interior sign changes."""
    return int(node_positions(psi).size)


def probability_left(psi):
    """Probability of finding the particle at x < 0."""
    x_min = psi.tail_cutoffs[0]
    if x_min >= 0.0:
        return 0.0
    tp = turning_points(psi.family, psi.shear, psi.eps)
    total = 0.0
    for lo, hi in ((x_min, tp.a), (tp.a, 0.0)):
        if hi > lo:
            total += integrate(lambda x: psi(x) ** 2, lo, hi, tol=1e-300, rtol=_QUAD_RTOL).value
    return min(max(total, 0.0), 1.0)


def dump_profile(psi, x_grid):
    """Two-column array of (x, psi(x))."""
    x = np.asarray(x_grid, dtype=float)
    return np.column_stack([x, psi(x)])


def schrodinger_residual(psi, x, h=1e-3):
    """|psi'' + (eps - U) psi| from a five-point stencil.

    U has a kink at 0, so stencils that would straddle the origin are
    replaced by the one-sided five-point formula on the side of x.  The step
    is ``h`` times the decay length of that side when it is shorter than 1,
    which matters on the steep left wall near nu = 1/2.
    """
    x = np.asarray(x, dtype=float)
    fam, s = psi.family, psi.shear
    n = fam.order
    slope = np.where(x >= 0.0, s.nu, s.nu_conjugate if not s.is_dirichlet else s.nu)
    h = h * np.minimum(1.0, (fam.k * slope ** n) ** (-1.0 / (n + 2)))
    d2 = (-psi(x + 2 * h) + 16 * psi(x + h) - 30 * psi(x) + 16 * psi(x - h) - psi(x - 2 * h)) / (12 * h * h)
    near = np.abs(x) < 2 * h
    if np.any(near):
        xn, hn = x[near], h[near]
        step = np.where(xn >= 0.0, hn, -hn)
        f = [psi(xn + j * step) for j in range(5)]
        d2[near] = (35 * f[0] - 104 * f[1] + 114 * f[2] - 56 * f[3] + 11 * f[4]) / (12 * hn * hn)
    return np.abs(d2 + (psi.eps - potential_value(fam, s, x)) * psi(x))
