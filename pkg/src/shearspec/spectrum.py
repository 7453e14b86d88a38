"""Spectral functions, level finding, nu sweeps and Hellmann-Feynman slopes.

Energies here are spectral energies E (see ``family``).  For the linear well
E equals the reduced energy; for the oscillator E = eps / (2 sqrt(k)).

Linear well.  With ap = -E/(k nu)^(2/3) and am = -E/(k nu')^(2/3) the
right/left branches are Ai((k nu)^(1/3) x + ap) and Ai((k nu')^(1/3)|x| + am);
matching value and slope at 0 gives

    F(E) = -(1/(2nu-1))^(1/3) Ai(ap) Ai'(am) - Ai'(ap) Ai(am).

Oscillator.  The branches are D_s(c x) and D_t(c' |x|) with
s = E/nu - 1/2, t = E/mu - 1/2, mu = nu', c = sqrt(2) k^(1/4) sqrt(nu) and
c' likewise with mu.  Dividing the slope-matching determinant by c' leaves

    F(E) = sqrt(2nu-1) D'_s(0) D_t(0) + D_s(0) D'_t(0),

where the values at the origin come from the reciprocal-gamma closed forms,
so F is entire in E.
"""
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._parallel import pmap
from .classical import wkb_level, wkb_spacing
from .errors import BracketError, NormalizationError, ShearSpecError
from .family import MonomialFamily, ShearParam, potential_nu_derivative
from .specfun import airy_all, pcf_u_origin

MAX_HALVINGS = 6
DEGENERACY_GAP = 1e-8


class DegeneracyWarning(UserWarning):
    pass


@dataclass(frozen=True)
class EnergyLevel:
    family: MonomialFamily
    nu: float
    n: int
    E: float
    residual: float
    bracket: tuple = field(default=(math.nan, math.nan), compare=False)

    @property
    def eps(self):
        """Reduced energy, the eigenvalue of -d^2/dx^2 + U."""
        return self.family.to_reduced(self.E)

    @property
    def shear(self):
        return ShearParam(self.nu)


@dataclass(frozen=True)
class OscillatorMatch:
    sigma_plus: float
    mu: float
    sigma_minus: float

    @classmethod
    def at(cls, nu, E):
        mu = nu / (2.0 * nu - 1.0)
        return cls(E / nu - 0.5, mu, E / mu - 0.5)


def _d_origin(sigma):
    # D_sigma(0), D'_sigma(0)
    return pcf_u_origin(-sigma - 0.5)


def _terms_linear(fam, s, E):
    # returns (t1, t2, scale); F = t1 + t2 and scale is the product of the
    # branch row norms, so |F|/scale is a dimensionless residual
    k = fam.k
    ap = -E / (k * s.nu) ** (2.0 / 3.0)
    ai_p, aip_p, _, _ = airy_all(ap)
    a, ad = ai_p.value, aip_p.value
    if s.is_dirichlet:
        return a, 0.0, abs(a) + abs(ad)
    am = -E / (k * s.nu_conjugate) ** (2.0 / 3.0)
    ai_m, aip_m, _, _ = airy_all(am)
    b, bd = ai_m.value, aip_m.value
    pref = -(1.0 / s.skew) ** (1.0 / 3.0)
    return pref * a * bd, -ad * b, max(1.0, abs(pref)) * (abs(a) + abs(ad)) * (abs(b) + abs(bd))


def _terms_oscillator(fam, s, E):
    d_p, dp_p = _d_origin(E / s.nu - 0.5)
    if s.is_dirichlet:
        return d_p, 0.0, abs(d_p) + abs(dp_p)
    d_m, dp_m = _d_origin(E / s.nu_conjugate - 0.5)
    return math.sqrt(s.skew) * dp_p * d_m, d_p * dp_m, (abs(d_p) + abs(dp_p)) * (abs(d_m) + abs(dp_m))


def _terms(fam, s, E):
    return (_terms_linear if fam.order == 1 else _terms_oscillator)(fam, s, E)


def f_linear(fam, s, E):
    """Spectral function of the sheared linear well; zeros are the levels."""
    if fam.order != 1:
        raise ValueError("f_linear needs the linear family")
    t1, t2, _ = _terms_linear(fam, s, float(E))
    return t1 + t2


def f_oscillator(fam, s, E):
    """Spectral function of the sheared oscillator; zeros are the levels."""
    if fam.order != 2:
        raise ValueError("f_oscillator needs the harmonic family")
    t1, t2, _ = _terms_oscillator(fam, s, float(E))
    return t1 + t2


def spectral_function(fam, s, E):
    t1, t2, _ = _terms(fam, s, float(E))
    return t1 + t2


def _residual(fam, s, E):
    t1, t2, scale = _terms(fam, s, E)
    return abs(t1 + t2) / scale if scale > 0.0 else 0.0


def _airy_zero(j):
    """j-th zero of Ai (j = 0, 1, ...), refined from the asymptotic guess."""
    t = 3.0 * math.pi / 8.0 * (4.0 * (j + 1) - 1.0)
    guess = -t ** (2.0 / 3.0) * (1.0 + 5.0 / 48.0 / t ** 2)
    f = lambda x: airy_all(x)[0].value
    lo, hi = guess - 0.2, guess + 0.2
    return brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)


def _dirichlet_levels(fam, n_max):
    out = []
    for j in range(n_max + 1):
        if fam.order == 1:
            E = (fam.k / 2.0) ** (2.0 / 3.0) * -_airy_zero(j)
        else:
            E = j + 0.75
        out.append(EnergyLevel(fam, 0.5, j, E, _residual(fam, ShearParam.dirichlet(), E), (E, E)))
    return out


def scan_window(fam, s, n_max):
    """(E_top, step) for bracketing, from nu-independent WKB levels."""
    eps_top = wkb_level(fam, s, n_max)
    delta = wkb_spacing(fam, s, n_max)
    return fam.to_spectral(eps_top + 3.0 * delta), fam.to_spectral(delta) / 8.0


def _brackets(fam, s, top, step):
    grid = np.arange(1, int(math.ceil(top / step)) + 1) * step
    vals = np.array([spectral_function(fam, s, E) for E in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append((grid[i], grid[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append((grid[i], grid[i + 1]))
    if vals[-1] == 0.0:
        roots.append((grid[-1], grid[-1]))
    return roots


def find_levels(fam, s, n_max, verify_nodes=True, xtol=1e-13):
    """Levels 0..n_max as EnergyLevel records, ascending.

    ``s.is_dirichlet`` selects the closed-form half-line spectrum.
    Raises BracketError if fewer than n_max + 1 sign changes are found after
    MAX_HALVINGS refinements of the scan step.
    """
    n_max = int(n_max)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if s.is_dirichlet:
        return _dirichlet_levels(fam, n_max)
    top, step = scan_window(fam, s, n_max)
    for _ in range(MAX_HALVINGS + 1):
        brackets = _brackets(fam, s, top, step)
        if len(brackets) >= n_max + 1:
            break
        step *= 0.5
    else:
        raise BracketError(f"found {len(brackets)} of {n_max + 1} levels for {fam.name} at nu={s.nu}")
    levels = []
    for n, (lo, hi) in enumerate(brackets[: n_max + 1]):
        if lo == hi:
            E = lo
        else:
            E = brentq(lambda e: spectral_function(fam, s, e), lo, hi, xtol=xtol, rtol=1e-15, maxiter=200)
        levels.append(EnergyLevel(fam, s.nu, n, float(E), _residual(fam, s, E), (float(lo), float(hi))))
    for a, b in zip(levels, levels[1:]):
        if b.E - a.E < DEGENERACY_GAP:
            warnings.warn(f"levels {a.n} and {b.n} closer than {DEGENERACY_GAP}", DegeneracyWarning)
    if verify_nodes:
        from .eigenfunction import build, count_nodes
        for lev in levels:
            nodes = count_nodes(build(fam, s, lev))
            if nodes != lev.n:
                raise BracketError(f"level {lev.n} at nu={s.nu} has {nodes} nodes; a root was missed")
    return levels


@dataclass(frozen=True)
class SweepRow:
    nu: float
    n: int
    E: float
    E_normalized: float
    error: str = ""

    @property
    def ok(self):
        return not self.error


def sweep(fam, nu_grid, n_max, threads=None):
    """Rows (nu, n, E, E/E(nu=1)) sorted by (nu, n); failed points keep NaNs and a message."""
    ref = [lev.E for lev in find_levels(fam, ShearParam(1.0), n_max)]

    def one(nu):
        try:
            levels = find_levels(fam, ShearParam(nu), n_max)
            return [SweepRow(nu, lev.n, lev.E, lev.E / ref[lev.n]) for lev in levels]
        except ShearSpecError as exc:
            return [SweepRow(nu, n, math.nan, math.nan, str(exc)) for n in range(n_max + 1)]

    grid = sorted(set(float(v) for v in nu_grid))
    chunks = pmap(one, grid, threads)
    return [row for chunk in chunks for row in chunk]


def hellmann_feynman_derivative(fam, s, level, psi=None):
    """dE/dnu = <psi| dU/dnu |psi>, converted to spectral energy units."""
    from .eigenfunction import build, expectation
    if s.is_dirichlet:
        raise ValueError("Hellmann-Feynman slope is not defined at the Dirichlet limit")
    if psi is None:
        psi = build(fam, s, level)
    norm = expectation(psi, lambda x: np.ones_like(x))
    if abs(norm - 1.0) > 1e-8:
        raise NormalizationError(f"eigenfunction norm {norm} differs from 1")
    val = expectation(psi, lambda x: potential_nu_derivative(fam, s, x))
    return val / fam.energy_scale


def fd_derivative(fam, nu, n, h=1e-4):
    """Central difference of E_n(nu), used to cross-check Hellmann-Feynman.

    The step shrinks near nu = 1/2 so both stencil points stay inside the
    domain, and becomes one-sided (backward) at nu = 1.
    """
    h = min(h, 0.25 * (nu - 0.5))
    hi = min(nu + h, 1.0)
    lo = nu - h
    e_hi = find_levels(fam, ShearParam(hi), n, verify_nodes=False)[n].E
    e_lo = find_levels(fam, ShearParam(lo), n, verify_nodes=False)[n].E
    return (e_hi - e_lo) / (hi - lo)


__all__ = [
    "EnergyLevel", "OscillatorMatch", "SweepRow", "DegeneracyWarning",
    "f_linear", "f_oscillator", "spectral_function", "find_levels", "sweep",
    "hellmann_feynman_derivative", "fd_derivative", "scan_window",
]
