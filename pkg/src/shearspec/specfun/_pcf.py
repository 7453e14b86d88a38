"""Kernels for Kummer's 1F1 and the parabolic cylinder function U(a, z).

U(a, z) for z >= 0 is taken from one of three routes:

* power series  U = U(a,0) y1 + U'(a,0) y2, with y1, y2 the even/odd Weber
  solutions written through 1F1; accepted only when its own cancellation
  estimate is below SERIES_RTOL,
* large-z asymptotic expansion, once z >= far_point(a),
* Taylor stepping of the Weber equation backwards from far_point(a), where
  U is recessive and the march is stable.

For z < 0 the series is used when accurate, otherwise stepping forwards from
z = 0 (U grows towards -infinity unless a + 1/2 is a non-positive integer,
which is handled by parity).
"""
import math

import numpy as np

from .._backend import njit
from ._ode import ode_walk, ode_walk_np

KUMMER_MAX_TERMS = 500
KUMMER_ZMAX = 50.0
SERIES_RTOL = 1e-13
PCF_ZMAX = 40.0
PCF_AMAX = 40.0
_EPS = 2.220446049250313e-16
_STEP_H = 0.5


@njit
def _kummer_series(a, b, z):
    t = 1.0
    s = 1.0
    asum = 1.0
    for k in range(KUMMER_MAX_TERMS):
        t *= (a + k) * z / ((b + k) * (k + 1.0))
        s += t
        asum += abs(t)
        if t == 0.0:
            return s, 4.0 * _EPS * asum, 0
        nxt = abs((a + k + 1.0) * z / ((b + k + 1.0) * (k + 2.0)))
        if abs(t) < 1e-17 * abs(s) and nxt < 0.5:
            return s, 4.0 * _EPS * asum + 2.0 * abs(t), 0
    return s, math.inf, 1


@njit
def hyp1f1(a, b, z):
    """(value, abs_error_estimate, status); status 1 means no convergence."""
    if z < 0.0:
        v, e, st = _kummer_series(b - a, b, -z)
        ez = math.exp(z)
        return v * ez, e * ez, st
    return _kummer_series(a, b, z)


@njit
def far_point(a):
    return max(9.5 + 0.3 * max(a, 0.0), 6.0 + 2.0 * math.sqrt(max(-a, 0.0))) + 0.5


@njit
def pcf_series(a, z, u0, up0):
    w = 0.5 * z * z
    E = math.exp(-0.25 * z * z)
    a1 = 0.5 * a + 0.25
    a2 = 0.5 * a + 0.75
    m1, e1, s1 = hyp1f1(a1, 0.5, w)
    m1d, e1d, s2 = hyp1f1(a1 + 1.0, 1.5, w)
    m2, e2, s3 = hyp1f1(a2, 1.5, w)
    m2d, e2d, s4 = hyp1f1(a2 + 1.0, 2.5, w)
    c1 = a1 / 0.5
    c2 = a2 / 1.5
    m1d *= c1
    e1d *= abs(c1)
    m2d *= c2
    e2d *= abs(c2)
    y1 = E * m1
    y1p = E * z * (m1d - 0.5 * m1)
    y2 = E * z * m2
    y2p = E * ((1.0 - w) * m2 + z * z * m2d)
    u = u0 * y1 + up0 * y2
    up = u0 * y1p + up0 * y2p
    # rounding in exp(-z^2/4) and in the gamma-based origin values
    ulps = 8.0 + 0.5 * w
    err = E * (abs(u0) * e1 + abs(up0 * z) * e2) + ulps * _EPS * (abs(u0 * y1) + abs(up0 * y2))
    errp = (E * (abs(u0 * z) * (e1d + 0.5 * e1) + abs(up0) * (abs(1.0 - w) * e2 + z * z * e2d))
            + ulps * _EPS * (abs(u0 * y1p) + abs(up0 * y2p)))
    status = s1 + s2 + s3 + s4
    return u, up, err, errp, status


@njit
def pcf_asym(a, z):
    """Large-z expansion of U(a, z) and its z-derivative.

    For a < 0 the leading terms can grow before the factors
    (a + 1/2 + 2k - 2) pass through zero, so truncation at the smallest
    term only starts after that point.
    """
    p = -a - 0.5
    pre = math.exp(-0.25 * z * z + p * math.log(z))
    z2 = z * z
    kmin = max(0.0, 0.5 * p) + 1.0
    t = 1.0
    s = 1.0
    sd = -0.5 * z + p / z
    prev = 1.0
    last = 0.0
    tmax = 1.0
    for k in range(1, 400):
        t *= -(a + 0.5 + 2.0 * k - 2.0) * (a + 0.5 + 2.0 * k - 1.0) / (2.0 * k * z2)
        mag = abs(t)
        if k > kmin and mag > prev:
            last = prev
            break
        s += t
        sd += t * (-0.5 * z + (p - 2.0 * k) / z)
        prev = mag
        last = mag
        tmax = max(tmax, mag)
        if t == 0.0 or (k > kmin and mag < 1e-18 * abs(s)):
            break
    # exp() of a large argument carries |arg| ulps of relative error
    rel = last + 4.0 * _EPS * tmax + 2.0 * _EPS * (0.25 * z2 + abs(p * math.log(z)))
    u = pre * s
    up = pre * sd
    return u, up, rel * abs(pre), rel * abs(pre) * (0.5 * z + abs(p) / z)


@njit
def _is_hermite(a):
    n = -a - 0.5
    return n >= 0.0 and n == math.floor(n)


@njit
def pcf_u_scalar(a, z, u0, up0):
    """(U, U', err, err') at real z; u0, up0 are U(a,0), U'(a,0).

    err = inf signals a convergence failure.
    """
    if z < 0.0:
        if _is_hermite(a):
            sgn = 1.0 if int(-a - 0.5) % 2 == 0 else -1.0
            u, up, e, ep = pcf_u_scalar(a, -z, u0, up0)
            return sgn * u, -sgn * up, e, ep
        if 0.5 * z * z <= KUMMER_ZMAX:
            u, up, e, ep, st = pcf_series(a, z, u0, up0)
            if st == 0 and e <= SERIES_RTOL * abs(u) and ep <= SERIES_RTOL * abs(up):
                return u, up, e, ep
        u, up, n = ode_walk(u0, up0, 0.0, z, a, 0.0, 0.25, _STEP_H)
        e = 64.0 * _EPS * (n + 1) * (abs(u) + abs(u0))
        ep = 64.0 * _EPS * (n + 1) * (abs(up) + abs(up0))
        return u, up, e, ep
    zf = far_point(a)
    if z >= zf:
        return pcf_asym(a, z)
    if 0.5 * z * z <= KUMMER_ZMAX:
        u, up, e, ep, st = pcf_series(a, z, u0, up0)
        if st == 0 and e <= SERIES_RTOL * abs(u) and ep <= SERIES_RTOL * abs(up):
            return u, up, e, ep
    uf, upf, ef, epf = pcf_asym(a, zf)
    u, up, n = ode_walk(uf, upf, zf, z, a, 0.0, 0.25, _STEP_H)
    rel = ef / abs(uf) + 8.0 * _EPS * (n + 1)
    q = math.sqrt(abs(a + 0.25 * z * z) + 1.0)
    env = max(abs(u), abs(up) / q)
    return u, up, rel * env, rel * env * q


@njit
def pcf_u_array(a, z, u0, up0):
    n = z.shape[0]
    out = np.empty((4, n))
    for i in range(n):
        r = pcf_u_scalar(a, z[i], u0, up0)
        for j in range(4):
            out[j, i] = r[j]
    return out


# ---------------------------------------------------------------- numpy path

def hyp1f1_np(a, b, z):
    """Vectorised 1F1 over array z for scalar a, b."""
    z = np.asarray(z, dtype=float)
    neg = z < 0.0
    aa = np.where(neg, b - a, a)
    zz = np.abs(z)
    t = np.ones_like(zz)
    s = np.ones_like(zz)
    asum = np.ones_like(zz)
    done = np.zeros(zz.shape, dtype=bool)
    last = np.zeros_like(zz)
    for k in range(KUMMER_MAX_TERMS):
        t = np.where(done, 0.0, t * (aa + k) * zz / ((b + k) * (k + 1.0)))
        s = s + t
        asum = asum + np.abs(t)
        nxt = np.abs((aa + k + 1.0) * zz / ((b + k + 1.0) * (k + 2.0)))
        fin = ~done & ((t == 0.0) | ((np.abs(t) < 1e-17 * np.abs(s)) & (nxt < 0.5)))
        last = np.where(fin, np.abs(t), last)
        done |= fin
        if np.all(done):
            break
    err = np.where(done, 4.0 * _EPS * asum + 2.0 * last, np.inf)
    scale = np.where(neg, np.exp(z), 1.0)
    return s * scale, err * scale, (~done).astype(int)


def pcf_series_np(a, z, u0, up0):
    w = 0.5 * z * z
    E = np.exp(-0.25 * z * z)
    a1 = 0.5 * a + 0.25
    a2 = 0.5 * a + 0.75
    m1, e1, s1 = hyp1f1_np(a1, 0.5, w)
    m1d, e1d, s2 = hyp1f1_np(a1 + 1.0, 1.5, w)
    m2, e2, s3 = hyp1f1_np(a2, 1.5, w)
    m2d, e2d, s4 = hyp1f1_np(a2 + 1.0, 2.5, w)
    c1, c2 = a1 / 0.5, a2 / 1.5
    m1d, e1d = m1d * c1, e1d * abs(c1)
    m2d, e2d = m2d * c2, e2d * abs(c2)
    y1 = E * m1
    y1p = E * z * (m1d - 0.5 * m1)
    y2 = E * z * m2
    y2p = E * ((1.0 - w) * m2 + z * z * m2d)
    u = u0 * y1 + up0 * y2
    up = u0 * y1p + up0 * y2p
    ulps = 8.0 + 0.5 * w
    err = E * (abs(u0) * e1 + np.abs(up0 * z) * e2) + ulps * _EPS * (np.abs(u0 * y1) + np.abs(up0 * y2))
    errp = (E * (np.abs(u0 * z) * (e1d + 0.5 * e1) + abs(up0) * (np.abs(1.0 - w) * e2 + z * z * e2d))
            + ulps * _EPS * (np.abs(u0 * y1p) + np.abs(up0 * y2p)))
    return u, up, err, errp, s1 + s2 + s3 + s4


def pcf_asym_np(a, z):
    p = -a - 0.5
    pre = np.exp(-0.25 * z * z + p * np.log(z))
    z2 = z * z
    kmin = max(0.0, 0.5 * p) + 1.0
    t = np.ones_like(z)
    s = np.ones_like(z)
    sd = -0.5 * z + p / z
    prev = np.ones_like(z)
    last = np.zeros_like(z)
    tmax = np.ones_like(z)
    live = np.ones(z.shape, dtype=bool)
    for k in range(1, 400):
        t = t * (-(a + 0.5 + 2.0 * k - 2.0) * (a + 0.5 + 2.0 * k - 1.0) / (2.0 * k * z2))
        mag = np.abs(t)
        if k > kmin:
            grow = live & (mag > prev)
            last = np.where(grow, prev, last)
            live &= ~grow
        tl = np.where(live, t, 0.0)
        s = s + tl
        sd = sd + tl * (-0.5 * z + (p - 2.0 * k) / z)
        last = np.where(live, mag, last)
        prev = np.where(live, mag, prev)
        tmax = np.where(live, np.maximum(tmax, mag), tmax)
        live &= t != 0.0
        if k > kmin:
            live &= mag >= 1e-18 * np.abs(s)
        if not np.any(live):
            break
    rel = last + 4.0 * _EPS * tmax + 2.0 * _EPS * (0.25 * z2 + np.abs(p * np.log(z)))
    err = rel * np.abs(pre)
    return pre * s, pre * sd, err, err * (0.5 * z + abs(p) / z)


def pcf_u_array_np(a, z, u0, up0):
    z = np.asarray(z, dtype=float)
    out = np.full((4, z.size), np.nan)
    neg = z < 0.0
    if np.any(neg):
        zn = z[neg]
        if _is_hermite_py(a):
            sgn = 1.0 if int(-a - 0.5) % 2 == 0 else -1.0
            r = pcf_u_array_np(a, -zn, u0, up0)
            out[:, neg] = np.array((sgn * r[0], -sgn * r[1], r[2], r[3]))
        else:
            res = np.full((4, zn.size), np.nan)
            todo = np.ones(zn.size, dtype=bool)
            ser = 0.5 * zn * zn <= KUMMER_ZMAX
            if np.any(ser):
                u, up, e, ep, st = pcf_series_np(a, zn[ser], u0, up0)
                good = (st == 0) & (e <= SERIES_RTOL * np.abs(u)) & (ep <= SERIES_RTOL * np.abs(up))
                idx = np.flatnonzero(ser)[good]
                res[:, idx] = np.array((u, up, e, ep))[:, good]
                todo[idx] = False
            if np.any(todo):
                zt = zn[todo]
                u, up = ode_walk_np(np.full_like(zt, u0), np.full_like(zt, up0), 0.0, zt, a, 0.0, 0.25, _STEP_H)
                nst = 3.0 * np.abs(zt) * (np.sqrt(abs(a) + zt * zt / 4.0) + 2.0) + 1.0
                res[:, todo] = np.array((u, up, 64.0 * _EPS * nst * (np.abs(u) + abs(u0)),
                                         64.0 * _EPS * nst * (np.abs(up) + abs(up0))))
            out[:, neg] = res
    pos = ~neg
    if np.any(pos):
        zp = z[pos]
        res = np.full((4, zp.size), np.nan)
        zf = far_point(a)
        far = zp >= zf
        if np.any(far):
            res[:, far] = np.array(pcf_asym_np(a, zp[far]))
        todo = ~far
        ser = todo & (0.5 * zp * zp <= KUMMER_ZMAX)
        if np.any(ser):
            u, up, e, ep, st = pcf_series_np(a, zp[ser], u0, up0)
            good = (st == 0) & (e <= SERIES_RTOL * np.abs(u)) & (ep <= SERIES_RTOL * np.abs(up))
            idx = np.flatnonzero(ser)[good]
            res[:, idx] = np.array((u, up, e, ep))[:, good]
            todo[idx] = False
        if np.any(todo):
            zt = zp[todo]
            uf, upf, ef, _ = pcf_asym_np(a, np.array([zf]))
            u, up = ode_walk_np(np.full_like(zt, uf[0]), np.full_like(zt, upf[0]), zf, zt, a, 0.0, 0.25, _STEP_H)
            nst = 3.0 * (zf - zt) * (np.sqrt(abs(a) + zf * zf / 4.0) + 2.0) + 1.0
            rel = ef[0] / abs(uf[0]) + 8.0 * _EPS * nst
            q = np.sqrt(np.abs(a + 0.25 * zt * zt) + 1.0)
            env = np.maximum(np.abs(u), np.abs(up) / q)
            res[:, todo] = np.array((u, up, rel * env, rel * env * q))
        out[:, pos] = res
    return out


def _is_hermite_py(a):
    n = -a - 0.5
    return n >= 0.0 and n == math.floor(n)
