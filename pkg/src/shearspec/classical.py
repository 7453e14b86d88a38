"""Classical period, action and WKB levels in reduced units.

Conventions: unit mass with 2m = 1, so the momentum is sqrt(eps - U) and the
full period is tau = sqrt(2) * int_a^b dx / sqrt(eps - U).  The WKB rule is
J(eps) = 2 int_a^b sqrt(eps - U) dx = pi (2n + 1).  With these choices the
symmetric oscillator (k = 1) has tau = sqrt(2) pi and eps_n = 2n + 1, which
is twice the spectral energy n + 1/2 (see ``family`` for the unit map).

Each side of the well is integrated separately with x = x0 cos^2(theta),
x0 the turning point on that side.  On a monomial branch U(x) = eps c^(2n)
with c = cos(theta), and eps - U = eps s^2 (1 + c^2 + ... + c^(2n-2)), so the
inverse square-root singularity cancels analytically against dx.
"""
import math

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, DomainError
from .family import turning_points
from .quadrature import QuadratureResult, integrate

_TOL = 1e-13


def _branch_sum(fam, c2):
    # 1 + c^2 + ... + c^(2n-2)
    return np.ones_like(c2) if fam.order == 1 else 1.0 + c2


def _sides(fam, s, eps):
    tp = turning_points(fam, s, eps)
    if s.is_dirichlet:
        return (tp.b,)
    return (tp.b, -tp.a)


def classical_period(fam, s, eps):
    """Full period tau(eps) on the sheared well."""
    eps = float(eps)
    if not eps > 0.0:
        raise DomainError(f"period needs eps > 0, got {eps}")
    value = 0.0
    err = 0.0
    for x0 in _sides(fam, s, eps):
        def g(th, x0=x0):
            c = np.cos(th)
            return 2.0 * x0 * c / np.sqrt(eps * _branch_sum(fam, c * c))
        r = integrate(g, 0.0, 0.5 * math.pi, tol=_TOL * x0, rtol=_TOL)
        value += r.value
        err += r.abs_error_estimate
    root2 = math.sqrt(2.0)
    return QuadratureResult(root2 * value, root2 * err + 4e-16 * root2 * value)


def action_integral(fam, s, eps):
    """J(eps) = 2 * int_a^b sqrt(eps - U) dx."""
    eps = float(eps)
    if not eps > 0.0:
        raise DomainError(f"action needs eps > 0, got {eps}")
    value = 0.0
    err = 0.0
    re = math.sqrt(eps)
    for x0 in _sides(fam, s, eps):
        def g(th, x0=x0):
            c = np.cos(th)
            sn = np.sin(th)
            return 2.0 * x0 * re * sn * sn * c * np.sqrt(_branch_sum(fam, c * c))
        r = integrate(g, 0.0, 0.5 * math.pi, tol=_TOL * x0 * re, rtol=_TOL)
        value += r.value
        err += r.abs_error_estimate
    return QuadratureResult(2.0 * value, 2.0 * err + 8e-16 * value)


def wkb_level(fam, s, n):
    """Reduced energy solving J(eps) = pi (2n + 1)."""
    n = int(n)
    if n < 0:
        raise DomainError(f"level index must be >= 0, got {n}")
    target = math.pi * (2 * n + 1)

    def resid(e):
        return action_integral(fam, s, e).value - target

    lo, hi = 1e-3, 1.0
    for _ in range(200):
        if resid(hi) > 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise BracketError(f"no WKB bracket for level {n}")
    while resid(lo) > 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise BracketError(f"no WKB bracket for level {n}")
    return brentq(resid, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def wkb_spacing(fam, s, n):
    """Local WKB level spacing in reduced units: 2 pi / (dJ/deps), dJ/deps = tau / sqrt(2)."""
    e = wkb_level(fam, s, n)
    return 2.0 * math.pi * math.sqrt(2.0) / classical_period(fam, s, e).value

