"""Airy functions Ai, Bi and their first derivatives on the real line.

Regions: Maclaurin series for |x| <= 2, Taylor stepping of y'' = x y in
2 < |x| < 9 (Ai marched inward from the asymptotic value at x = 9, the
oscillatory side marched outward from 0), and the standard asymptotic
expansions for |x| >= 9.  Arguments beyond |x| = 100 raise RangeError.
"""
import math

import numpy as np

from .._backend import select
from ..errors import RangeError
from ._airy import AIRY_XMAX, airy4, airy4_array, airy4_array_np
from ._value import FunctionValue

_airy_array = select(airy4_array, airy4_array_np)


def _check(x):
    x = float(x)
    if not math.isfinite(x) or abs(x) > AIRY_XMAX:
        raise RangeError(f"Airy argument {x} outside |x| <= {AIRY_XMAX}")
    return x


def _scalar(x):
    x = _check(x)
    return _airy_array(np.array([x]))[:, 0], x


def airy_all(x):
    """All four Airy values at scalar ``x`` as FunctionValues (Ai, Ai', Bi, Bi')."""
    r, x = _scalar(x)
    dscale = max(1.0, math.sqrt(abs(x)))
    return (FunctionValue(r[0], r[4]), FunctionValue(r[1], r[4] * dscale),
            FunctionValue(r[2], r[5]), FunctionValue(r[3], r[5] * dscale))


def airy_ai(x):
    """Ai(x)."""
    return airy_all(x)[0]


def airy_ai_prime(x):
    """Ai'(x)."""
    return airy_all(x)[1]


def airy_bi(x):
    """Bi(x)."""
    return airy_all(x)[2]


def airy_bi_prime(x):
    """Bi'(x)."""
    return airy_all(x)[3]


def airy_arrays(x):
    """Vectorised evaluation; returns (ai, aip, bi, bip) float arrays."""
    x = np.ascontiguousarray(x, dtype=float).ravel()
    if x.size and (not np.all(np.isfinite(x)) or np.max(np.abs(x)) > AIRY_XMAX):
        raise RangeError(f"Airy arguments must satisfy |x| <= {AIRY_XMAX}")
    r = _airy_array(x)
    return r[0], r[1], r[2], r[3]


# keep the scalar kernel importable for jit callers
airy_kernel = airy4
