"""Finite-difference reference solver, free of special functions.

-psi'' + U psi = eps psi is discretised with the three-point Laplacian on a
uniform interior grid with Dirichlet ends.  Eigenvalues of the resulting
symmetric tridiagonal matrix come from Sturm-sequence counting plus
bisection; eigenvectors from inverse iteration with a Thomas solve.
Matrix eigenvalues are reduced energies; ``oracle_levels`` converts to
spectral energies.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._backend import njit, select
from .classical import wkb_level, wkb_spacing
from .errors import ConvergenceError, DomainError
from .family import ShearParam, potential_value, turning_points

BISECT_TOL = 1e-10
MAX_INVERSE_ITER = 50
DECAY_LENGTHS = 8.0
WALL_MARGIN = 10.0


@dataclass(frozen=True)
class TridiagonalOperator:
    diag: np.ndarray
    offdiag: np.ndarray
    h: float
    x0: float

    def __post_init__(self):
        if self.diag.size < 3 or self.offdiag.size != self.diag.size - 1 or not self.h > 0.0:
            raise DomainError("tridiagonal operator needs N >= 3, N-1 off-diagonals and h > 0")

    @property
    def size(self):
        return self.diag.size

    @property
    def grid(self):
        return self.x0 + self.h * np.arange(1, self.size + 1)


@njit
def _sturm_count_nb(d, e2, lam):
    # number of eigenvalues strictly below lam
    count = 0
    q = d[0] - lam
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        if q == 0.0:
            q = 1e-300
        q = d[i] - lam - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


@njit
def _lowest_nb(d, e2, m, lo, hi, tol):
    out = np.empty(m)
    for j in range(m):
        a = lo
        b = hi
        while b - a > tol:
            c = 0.5 * (a + b)
            if _sturm_count_nb(d, e2, c) > j:
                b = c
            else:
                a = c
        out[j] = 0.5 * (a + b)
        lo = a
    return out


def _sturm_count_np(d, e2, lam):
    """Vectorised over an array of shifts ``lam``."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    q = d[0] - lam
    count = (q < 0.0).astype(int)
    for i in range(1, d.size):
        q = np.where(q == 0.0, 1e-300, q)
        q = d[i] - lam - e2[i - 1] / q
        count += q < 0.0
    return count


def _lowest_np(d, e2, m, lo, hi, tol):
    # all m bisections advance together, one Sturm sweep per round
    a = np.full(m, lo)
    b = np.full(m, hi)
    idx = np.arange(m)
    while np.any(b - a > tol):
        c = 0.5 * (a + b)
        below = _sturm_count_np(d, e2, c) > idx
        b = np.where(below, c, b)
        a = np.where(below, a, c)
    return 0.5 * (a + b)


_sturm_count = select(_sturm_count_nb, lambda d, e2, lam: int(_sturm_count_np(d, e2, lam)[0]))
_lowest = select(_lowest_nb, _lowest_np)


def sturm_count(T, lam):
    """Eigenvalues of T below ``lam``; monotone non-decreasing in lam."""
    return int(_sturm_count(T.diag, T.offdiag ** 2, float(lam)))


def default_extent(fam, s, eps_max):
    """(L_left, L_right): turning point plus DECAY_LENGTHS decay lengths, widened until U > eps_max + WALL_MARGIN."""
    tp = turning_points(fam, s, eps_max)
    n, k = fam.order, fam.k
    wall = ((eps_max + WALL_MARGIN) * 1.05 / k) ** (1.0 / n)

    def side(slope_nu, t_turn):
        # decay length of psi'' = k (slope_nu x)^n psi near the turning point
        ell = (k * slope_nu ** n) ** (-1.0 / (n + 2))
        return max(t_turn + DECAY_LENGTHS * ell, wall / slope_nu)

    right = side(s.nu, tp.b)
    left = 0.0 if s.is_dirichlet else side(s.nu_conjugate, -tp.a)
    return left, right


def discretize(fam, s, L, N, boundary="dirichlet_full_line", eps_max=None):
    """Tridiagonal -d^2/dx^2 + U on N interior points.

    ``L`` is a half-width or a (left, right) pair; the half-line boundary
    uses (0, L_right].  If ``eps_max`` is given the walls are checked to
    satisfy U > eps_max + 10.
    """
    N = int(N)
    if N < 200:
        raise DomainError(f"grid needs N >= 200, got {N}")
    if np.ndim(L) == 0:
        left, right = float(L), float(L)
    else:
        left, right = (float(v) for v in L)
    if boundary == "dirichlet_half_line":
        left = 0.0
    elif boundary != "dirichlet_full_line":
        raise DomainError(f"unknown boundary {boundary!r}")
    h = (left + right) / (N + 1)
    if left > 0.0:
        # put the kink of U at x = 0 on a node so the error stays a smooth O(h^2)
        i0 = max(1, min(N, round(left / h)))
        left, right = i0 * h, (N + 1 - i0) * h
    if eps_max is not None:
        wall = eps_max + WALL_MARGIN
        if potential_value(fam, s, right) <= wall or (left > 0.0 and potential_value(fam, s, -left) <= wall):
            raise DomainError(f"domain [-{left}, {right}] too small: U at the walls must exceed {wall}")
    x0 = -left
    x = x0 + h * np.arange(1, N + 1)
    u = potential_value(fam, s, x)
    diag = 2.0 / (h * h) + u
    off = np.full(N - 1, -1.0 / (h * h))
    return TridiagonalOperator(diag, off, h, x0)


def lowest_eigenvalues(T, m):
    """The m smallest eigenvalues, ascending, to BISECT_TOL."""
    m = int(m)
    if not 1 <= m <= T.size:
        raise DomainError(f"m must lie in [1, {T.size}]")
    d = T.diag
    e = np.abs(T.offdiag)
    rad = np.zeros_like(d)
    rad[:-1] += e
    rad[1:] += e
    lo = float(np.min(d - rad)) - 1.0
    e2 = T.offdiag ** 2
    # tighten the upper end: double from lo until m eigenvalues lie below
    span = 1.0
    hi = lo + span
    top = float(np.max(d + rad)) + 1.0
    while hi < top and _sturm_count(d, e2, hi) < m:
        span *= 2.0
        hi = lo + span
    hi = min(hi, top)
    return np.asarray(_lowest(d, e2, m, lo, hi, BISECT_TOL), dtype=float)


def _thomas(sub, diag, sup, rhs):
    n = diag.size
    c = np.empty(n - 1)
    g = np.empty(n)
    beta = diag[0]
    g[0] = rhs[0] / beta
    for i in range(1, n):
        c[i - 1] = sup[i - 1] / beta
        beta = diag[i] - sub[i - 1] * c[i - 1]
        if beta == 0.0:
            beta = 1e-300
        g[i] = (rhs[i] - sub[i - 1] * g[i - 1]) / beta
    for i in range(n - 2, -1, -1):
        g[i] -= c[i] * g[i + 1]
    return g


_thomas_nb = njit(_thomas)
_solve = select(_thomas_nb, _thomas)


def eigenvector(T, lam, tol=1e-10):
    """Inverse-iteration eigenvector, normalised so that h * sum(v^2) = 1."""
    lam = float(lam)
    shift = lam + 1e-12 * max(1.0, abs(lam))
    diag = T.diag - shift
    v = np.ones(T.size) / math.sqrt(T.size * T.h)
    for _ in range(MAX_INVERSE_ITER):
        w = _solve(T.offdiag, diag, T.offdiag, v)
        w /= math.sqrt(T.h * np.dot(w, w))
        if np.dot(w, v) < 0.0:
            w = -w
        if math.sqrt(T.h * np.dot(w - v, w - v)) < tol:
            return _orient(w)
        v = w
    raise ConvergenceError(f"inverse iteration at lambda={lam} did not converge")


def _orient(v):
    # make the outermost significant lobe on the right positive
    big = np.flatnonzero(np.abs(v) > 1e-6 * np.max(np.abs(v)))
    return -v if v[big[-1]] < 0.0 else v


def oracle_levels(fam, s, m, N=4000, L=None, richardson=True):
    """Lowest m spectral energies from the FD oracle.

    With ``richardson`` the grid is solved at N and 2N+1 points (spacing
    exactly halved) and combined as (4 E_fine - E_coarse) / 3.
    """
    boundary = "dirichlet_half_line" if s.is_dirichlet else "dirichlet_full_line"
    eps_max = None
    if L is None:
        # upper target: WKB top level plus a few spacings covers the shift at small nu
        ref = ShearParam(1.0) if s.is_dirichlet else s
        eps_max = wkb_level(fam, ref, m - 1) + 3.0 * wkb_spacing(fam, ref, m - 1)
        L = default_extent(fam, s, eps_max)
    coarse = lowest_eigenvalues(_build(fam, s, L, N, boundary, eps_max), m)
    if not richardson:
        return fam.to_spectral(coarse)
    fine = lowest_eigenvalues(_build(fam, s, L, 2 * N + 1, boundary, eps_max), m)
    return fam.to_spectral((4.0 * fine - coarse) / 3.0)


def _build(fam, s, L, N, boundary, eps_max):
    if s.is_dirichlet:
        return discretize_half_line(fam, s, L if np.ndim(L) == 0 else L[1], N, eps_max)
    return discretize(fam, s, L, N, boundary, eps_max)


def discretize_half_line(fam, s, L, N, eps_max=None):
    """The nu = 1/2 limit: U = k (x/2)^n on (0, L] with psi(0) = 0."""
    return discretize(fam, s, (0.0, L), N, "dirichlet_half_line", eps_max)
