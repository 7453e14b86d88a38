"""Sheared monomial wells and the unit conventions used throughout.

Both families are written in the reduced form

    psi'' + (eps - U(x)) psi = 0,   U(x) = k (nu x)^n for x >= 0,
                                    U(x) = k (nu' |x|)^n for x < 0,

with nu' = nu / (2 nu - 1).  The energy eps in this equation is the
*reduced* energy; classical quantities (turning points, period, action,
WKB) are expressed in it.

The *spectral* energy E reported by the spectrum module is

    linear   (n = 1):  E = eps                (E = 2m calE / hbar^2)
    harmonic (n = 2):  E = eps / (2 sqrt(k))  (E = calE / (hbar omega))

so the symmetric oscillator has E_n = n + 1/2.  ``MonomialFamily.energy_scale``
is the factor eps / E.  If the oscillator is described by a length-type
parameter kappa with U = (kappa^4 / 4) (nu x)^2, then k = kappa^4 / 4;
the default k = 1 is used everywhere unless overridden.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

NU_MIN_DEFAULT = 0.5 + 1e-6


@dataclass(frozen=True)
class MonomialFamily:
    order: int
    k: float = 1.0

    def __post_init__(self):
        if self.order not in (1, 2):
            raise DomainError(f"monomial order must be 1 or 2, got {self.order}")
        k = float(self.k)
        if not (math.isfinite(k) and k > 0.0):
            raise DomainError(f"strength k must be positive and finite, got {self.k}")
        object.__setattr__(self, "k", k)

    @classmethod
    def linear(cls, k=1.0):
        return cls(1, k)

    @classmethod
    def harmonic(cls, k=1.0):
        return cls(2, k)

    @classmethod
    def from_name(cls, name, k=1.0):
        try:
            return cls({"linear": 1, "harmonic": 2}[name], k)
        except KeyError:
            raise DomainError(f"unknown family {name!r}; use 'linear' or 'harmonic'") from None

    @property
    def name(self):
        return "linear" if self.order == 1 else "harmonic"

    @property
    def energy_scale(self):
        """Reduced energy per unit of spectral energy."""
        return 1.0 if self.order == 1 else 2.0 * math.sqrt(self.k)

    def to_reduced(self, E):
        return E * self.energy_scale

    def to_spectral(self, eps):
        return eps / self.energy_scale


@dataclass(frozen=True)
class ShearParam:
    """Shear parameter nu with its conjugate nu' = nu/(2 nu - 1).

    ``ShearParam.dirichlet()`` is the nu = 1/2 limit, where nu' is infinite
    and the left half-line is a hard wall; passing nu = 0.5 exactly selects
    the same mode.  Other values must lie in (nu_min, 1].
    """

    nu: float
    nu_conjugate: float = field(init=False)
    nu_min: float = field(default=NU_MIN_DEFAULT, repr=False, compare=False)

    def __post_init__(self):
        nu = float(self.nu)
        if nu == 0.5:
            object.__setattr__(self, "nu", 0.5)
            object.__setattr__(self, "nu_conjugate", math.inf)
            return
        if not (math.isfinite(nu) and self.nu_min < nu <= 1.0):
            raise DomainError(f"nu = {nu} outside ({self.nu_min}, 1]")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "nu_conjugate", conjugate_shear(nu))

    @classmethod
    def dirichlet(cls):
        return cls(0.5)

    @property
    def is_dirichlet(self):
        return self.nu == 0.5

    @property
    def skew(self):
        """2 nu - 1, the ratio nu / nu'."""
        return 2.0 * self.nu - 1.0


@dataclass(frozen=True)
class TurningPoints:
    a: float
    b: float

    @property
    def width(self):
        return self.b - self.a


def conjugate_shear(nu):
    """nu / (2 nu - 1); an involution on (1/2, inf)."""
    nu = float(nu)
    if not (nu > 0.5) or not math.isfinite(nu):
        raise DomainError(f"conjugate shear needs nu > 1/2, got {nu}")
    return nu / (2.0 * nu - 1.0)


def potential_value(fam, s, x):
    """U(x) in reduced units; works on scalars and arrays."""
    xa = np.asarray(x, dtype=float)
    n, k = fam.order, fam.k
    right = k * (s.nu * np.abs(xa)) ** n
    if s.is_dirichlet:
        left = np.where(xa < 0.0, np.inf, 0.0)
    else:
        left = k * (s.nu_conjugate * np.abs(xa)) ** n
    out = np.where(xa >= 0.0, right, left)
    return float(out) if out.ndim == 0 else out


def potential_nu_derivative(fam, s, x):
    """dU/dnu at fixed x (reduced units), used by Hellmann-Feynman."""
    xa = np.asarray(x, dtype=float)
    k, nu, d = fam.k, s.nu, s.skew
    if fam.order == 1:
        # left branch is -k nu' x with d nu'/d nu = -1/(2 nu - 1)^2
        right = k * xa
        left = k * xa / (d * d)
    else:
        right = 2.0 * k * nu * xa * xa
        left = -2.0 * k * nu * xa * xa / (d * d * d)
    out = np.where(xa >= 0.0, right, left)
    return float(out) if out.ndim == 0 else out


def turning_points(fam, s, eps):
    """Classical turning points a < 0 < b at reduced energy ``eps``."""
    eps = float(eps)
    if not (eps > 0.0 and math.isfinite(eps)):
        raise DomainError(f"turning points need a positive energy, got {eps}")
    r = (eps / fam.k) ** (1.0 / fam.order)
    b = r / s.nu
    a = -r * s.skew / s.nu
    return TurningPoints(a, b)
