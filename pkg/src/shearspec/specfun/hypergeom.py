"""Kummer's confluent hypergeometric function and parabolic cylinder functions.

Declared ranges: kummer_1f1 for |z| <= 50, U(a, z) and D_sigma(z) for
|a| <= 40 and |z| <= 40.  Outside these, ConvergenceError is raised rather
than returning an unverified number.
"""
import math

import numpy as np

from .._backend import select
from ..errors import ConvergenceError, DomainError
from ._pcf import (KUMMER_ZMAX, PCF_AMAX, PCF_ZMAX, hyp1f1, pcf_u_array, pcf_u_array_np)
from ._value import FunctionValue
from .gamma import rgamma_kernel

_SQRT_PI = math.sqrt(math.pi)
_pcf_array = select(pcf_u_array, pcf_u_array_np)


def kummer_1f1(a, b, z):
    """M(a; b; z) = 1F1(a; b; z) by the Kummer series."""
    a, b, z = float(a), float(b), float(z)
    if b <= 0.0 and b == math.floor(b):
        raise DomainError(f"1F1 undefined for b = {b}")
    if not (math.isfinite(a) and math.isfinite(z)):
        raise DomainError("1F1 arguments must be finite")
    if abs(z) > KUMMER_ZMAX:
        raise ConvergenceError(f"1F1: |z| = {abs(z)} beyond declared range {KUMMER_ZMAX}")
    v, e, status = hyp1f1(a, b, z)
    if status or not math.isfinite(v):
        raise ConvergenceError(f"1F1({a}; {b}; {z}) did not converge in 500 terms")
    return FunctionValue(v, e)


def pcf_u_origin(a):
    """(U(a, 0), U'(a, 0)) from the gamma closed forms."""
    u0 = _SQRT_PI * 2.0 ** (-0.5 * a - 0.25) * rgamma_kernel(0.5 * a + 0.75)
    up0 = -_SQRT_PI * 2.0 ** (-0.5 * a + 0.25) * rgamma_kernel(0.5 * a + 0.25)
    return u0, up0


def _check(a, z):
    if not (math.isfinite(a) and np.all(np.isfinite(z))):
        raise DomainError("parabolic cylinder arguments must be finite")
    if abs(a) > PCF_AMAX or (np.size(z) and np.max(np.abs(z)) > PCF_ZMAX):
        raise ConvergenceError(f"U(a, z) outside declared range |a| <= {PCF_AMAX}, |z| <= {PCF_ZMAX}")


def pcf_u_arrays(a, z):
    """Vectorised U(a, z): returns (U, U', err, err') arrays."""
    a = float(a)
    z = np.ascontiguousarray(z, dtype=float).ravel()
    _check(a, z)
    u0, up0 = pcf_u_origin(a)
    r = _pcf_array(a, z, u0, up0)
    if not np.all(np.isfinite(r)):
        raise ConvergenceError(f"U({a}, z) evaluation failed to converge")
    return r[0], r[1], r[2], r[3]


def _pcf_pair(a, z):
    u, up, e, ep = pcf_u_arrays(a, np.array([float(z)]))
    return FunctionValue(u[0], e[0]), FunctionValue(up[0], ep[0])


def pcf_u(a, z):
    """Parabolic cylinder function U(a, z)."""
    return _pcf_pair(a, z)[0]


def pcf_u_prime(a, z):
    """dU(a, z)/dz."""
    return _pcf_pair(a, z)[1]


def pcf_d(sigma, z):
    """Whittaker's D_sigma(z) = U(-sigma - 1/2, z)."""
    return _pcf_pair(-float(sigma) - 0.5, z)[0]


def pcf_d_prime(sigma, z):
    """dD_sigma(z)/dz."""
    return _pcf_pair(-float(sigma) - 0.5, z)[1]


def pcf_d_arrays(sigma, z):
    """Vectorised D_sigma(z): (D, D', err, err')."""
    return pcf_u_arrays(-float(sigma) - 0.5, z)
