"""Gamma and reciprocal gamma via the Lanczos approximation.

Coefficients are Godfrey's set for g = 7, n = 9, good to roughly 1e-15
relative for x >= 1/2.  Arguments below 1/2 go through the reflection
formula with an exactly-reduced sin(pi x), so poles come out as exact zeros
of the reciprocal gamma.
"""
import math

from .._backend import njit
from ..errors import PoleError, RangeError

LANCZOS_G = 7.0
LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_C0, _C1, _C2, _C3, _C4, _C5, _C6, _C7, _C8 = LANCZOS_COEF
_SQRT_2PI = math.sqrt(2.0 * math.pi)
# Gamma(x) overflows a double just above this
GAMMA_XMAX = 171.6243769563027


@njit
def sinpi(x):
    """sin(pi x); reduction by the nearest integer is exact, so zeros are exact too."""
    n = math.floor(x + 0.5)
    r = x - n
    if r == 0.0:
        return 0.0
    v = math.sin(math.pi * r)
    return -v if n % 2.0 != 0.0 else v


@njit
def _lanczos(x):
    # valid for x >= 0.5
    z = x - 1.0
    a = (_C0 + _C1 / (z + 1.0) + _C2 / (z + 2.0) + _C3 / (z + 3.0) + _C4 / (z + 4.0)
         + _C5 / (z + 5.0) + _C6 / (z + 6.0) + _C7 / (z + 7.0) + _C8 / (z + 8.0))
    t = z + LANCZOS_G + 0.5
    # split the power so t**(z+0.5) cannot overflow before exp(-t) shrinks it
    p = math.pow(t, 0.5 * (z + 0.5))
    return _SQRT_2PI * p * (p * math.exp(-t)) * a


@njit
def gamma_kernel(x):
    """Gamma(x); returns inf at poles and on overflow (wrappers raise)."""
    if x >= 0.5:
        if x > GAMMA_XMAX:
            return math.inf
        return _lanczos(x)
    s = sinpi(x)
    if s == 0.0:
        return math.inf
    if 1.0 - x > GAMMA_XMAX:
        # |Gamma(x)| underflows for very negative non-integer x
        return 0.0
    return math.pi / (s * _lanczos(1.0 - x))


@njit
def rgamma_kernel(x):
    """1/Gamma(x), entire: zero at the non-positive integers."""
    if x >= 0.5:
        if x > GAMMA_XMAX:
            return 0.0
        return 1.0 / _lanczos(x)
    if 1.0 - x > GAMMA_XMAX:
        return math.inf
    return sinpi(x) * _lanczos(1.0 - x) / math.pi


def gamma(x):
    """Gamma function for real ``x``.

    Raises PoleError at non-positive integers and RangeError when the
    result exceeds the double range.
    """
    x = float(x)
    if not math.isfinite(x):
        raise RangeError(f"gamma: non-finite argument {x}")
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    g = gamma_kernel(x)
    if math.isinf(g):
        raise RangeError(f"gamma({x}) overflows")
    return g


def rgamma(x):
    """Reciprocal gamma 1/Gamma(x); exactly zero at the poles of Gamma."""
    x = float(x)
    if not math.isfinite(x):
        raise RangeError(f"rgamma: non-finite argument {x}")
    r = rgamma_kernel(x)
    if math.isinf(r):
        raise RangeError(f"rgamma({x}) overflows")
    return r
