"""Airy kernels: Ai, Ai', Bi, Bi' evaluated together.

Regions (|x| <= AIRY_XMAX):
  |x| <= 2        Maclaurin series of the two standard power-series solutions
  2 < x < 9       Bi by Maclaurin (positive terms, no cancellation); Ai by
                  Taylor stepping backwards from the asymptotic value at 9
  -9 < x < -2     Taylor stepping outwards from the values at 0
  |x| >= 9        asymptotic expansions (exponential / oscillatory forms)

The Maclaurin series cannot give Ai to 1e-10 relative much beyond x = 4
(it subtracts two Bi-sized sums), and the asymptotic series has not yet
reached 1e-10 below |x| = 7, hence the stepping band in between.
"""
import math

import numpy as np

from .._backend import njit
from ._ode import ode_walk, ode_walk_np
from .gamma import gamma

AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * gamma(2.0 / 3.0))
AIP0 = -1.0 / (3.0 ** (1.0 / 3.0) * gamma(1.0 / 3.0))
BI0 = 1.0 / (3.0 ** (1.0 / 6.0) * gamma(2.0 / 3.0))
BIP0 = 3.0 ** (1.0 / 6.0) / gamma(1.0 / 3.0)

AIRY_XMAX = 100.0
MACLAURIN_R = 2.0
ASYM_R = 9.0
_STEP_H = 0.5
_EPS = 2.220446049250313e-16
_SQRT_PI = math.sqrt(math.pi)
_MAX_ASYM = 60


@njit
def _maclaurin(x):
    x3 = x * x * x
    tf = 1.0
    tg = x
    tfp = 0.5 * x * x
    tgp = 1.0
    f = tf
    g = tg
    fp = tfp
    gp = tgp
    af = 1.0
    ag = abs(x)
    for k in range(1, 200):
        tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k))
        tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0))
        tgp *= x3 / ((3.0 * k - 2.0) * (3.0 * k))
        if k >= 2:
            tfp *= x3 / ((3.0 * k - 3.0) * (3.0 * k - 1.0))
            fp += tfp
        f += tf
        g += tg
        gp += tgp
        af += abs(tf)
        ag += abs(tg)
        if abs(tf) < 1e-18 * abs(f) and abs(tg) < 1e-18 * (abs(g) + 1e-300) and k > 2:
            break
    ai = AI0 * f + AIP0 * g
    aip = AI0 * fp + AIP0 * gp
    bi = BI0 * f + BIP0 * g
    bip = BI0 * fp + BIP0 * gp
    err_a = 4.0 * _EPS * (AI0 * af - AIP0 * ag)
    err_b = 4.0 * _EPS * (BI0 * af + BIP0 * ag)
    return ai, aip, bi, bip, err_a, err_b


@njit
def _asym_sums(zeta):
    """Partial sums of the u_k, v_k series in 1/zeta.

    Returns (U_alt, V_alt, U_pos, V_pos, U_even, U_odd, V_even, V_odd, last)
    where *_alt carry (-1)^k, *_even/_odd are the oscillatory-form sums and
    ``last`` is the magnitude of the first omitted term.
    """
    u = 1.0
    zk = 1.0
    ualt = 1.0
    valt = 1.0
    upos = 1.0
    vpos = 1.0
    ueven = 1.0
    uodd = 0.0
    veven = 1.0
    vodd = 0.0
    prev = 1.0
    last = 0.0
    for k in range(1, _MAX_ASYM):
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * (2.0 * k - 1.0) * k)
        zk /= zeta
        v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u
        tu = u * zk
        tv = v * zk
        mag = abs(tu)
        if mag > prev:
            last = prev
            break
        sgn = -1.0 if k % 2 == 1 else 1.0
        ualt += sgn * tu
        valt += sgn * tv
        upos += tu
        vpos += tv
        # oscillatory form: even k enters with (-1)^(k/2), odd k with (-1)^((k-1)/2)
        j = k // 2
        sj = -1.0 if j % 2 == 1 else 1.0
        if k % 2 == 0:
            ueven += sj * tu
            veven += sj * tv
        else:
            uodd += sj * tu
            vodd += sj * tv
        prev = mag
        last = mag
        if mag < 1e-18:
            break
    return ualt, valt, upos, vpos, ueven, uodd, veven, vodd, last


@njit
def _asym_pos(x):
    zeta = 2.0 / 3.0 * x * math.sqrt(x)
    x14 = math.sqrt(math.sqrt(x))
    ualt, valt, upos, vpos, _, _, _, _, last = _asym_sums(zeta)
    em = math.exp(-zeta)
    ep = math.exp(zeta)
    ai = em / (2.0 * _SQRT_PI * x14) * ualt
    aip = -x14 * em / (2.0 * _SQRT_PI) * valt
    bi = ep / (_SQRT_PI * x14) * upos
    bip = x14 * ep / _SQRT_PI * vpos
    rel = 2.0 * last + 8.0 * _EPS
    return ai, aip, bi, bip, rel * abs(ai), rel * abs(bi)


@njit
def _asym_neg(x):
    z = -x
    zeta = 2.0 / 3.0 * z * math.sqrt(z)
    z14 = math.sqrt(math.sqrt(z))
    _, _, _, _, ueven, uodd, veven, vodd, last = _asym_sums(zeta)
    th = zeta - 0.25 * math.pi
    c = math.cos(th)
    s = math.sin(th)
    ai = (c * ueven + s * uodd) / (_SQRT_PI * z14)
    aip = z14 / _SQRT_PI * (s * veven - c * vodd)
    bi = (-s * ueven + c * uodd) / (_SQRT_PI * z14)
    bip = z14 / _SQRT_PI * (c * veven + s * vodd)
    # error relative to the envelope, not to the (possibly vanishing) value
    env = 1.0 / (_SQRT_PI * z14)
    err = (2.0 * last + 8.0 * _EPS * (1.0 + zeta * _EPS)) * env + _EPS * zeta * env
    return ai, aip, bi, bip, err, err


@njit
def airy4(x):
    """(Ai, Ai', Bi, Bi', err_Ai, err_Bi) at real x with |x| <= AIRY_XMAX."""
    ax = abs(x)
    if ax <= MACLAURIN_R:
        return _maclaurin(x)
    if x >= ASYM_R:
        return _asym_pos(x)
    if x <= -ASYM_R:
        return _asym_neg(x)
    if x > 0.0:
        _, _, bi, bip, _, err_b = _maclaurin(x)
        a9, ap9, _, _, e9, _ = _asym_pos(ASYM_R)
        ai, aip, n = ode_walk(a9, ap9, ASYM_R, x, 0.0, 1.0, 0.0, _STEP_H)
        err_a = (e9 / abs(a9) + 4.0 * _EPS * (n + 1)) * abs(ai)
        return ai, aip, bi, bip, err_a, err_b
    ai, aip, n = ode_walk(AI0, AIP0, 0.0, x, 0.0, 1.0, 0.0, _STEP_H)
    bi, bip, n = ode_walk(BI0, BIP0, 0.0, x, 0.0, 1.0, 0.0, _STEP_H)
    env = 1.0 / (_SQRT_PI * math.sqrt(math.sqrt(ax)))
    err = 8.0 * _EPS * (n + 1) * math.sqrt(ax) * env
    return ai, aip, bi, bip, err, err


@njit
def airy4_array(x):
    n = x.shape[0]
    out = np.empty((6, n))
    for i in range(n):
        r = airy4(x[i])
        for j in range(6):
            out[j, i] = r[j]
    return out


# ---------------------------------------------------------------- numpy path

def _maclaurin_np(x):
    x3 = x ** 3
    tf = np.ones_like(x)
    tg = x.copy()
    tfp = 0.5 * x * x
    tgp = np.ones_like(x)
    f, g, fp, gp = tf.copy(), tg.copy(), tfp.copy(), tgp.copy()
    af, ag = np.ones_like(x), np.abs(x)
    for k in range(1, 200):
        tf = tf * x3 / ((3.0 * k - 1.0) * (3.0 * k))
        tg = tg * x3 / ((3.0 * k) * (3.0 * k + 1.0))
        tgp = tgp * x3 / ((3.0 * k - 2.0) * (3.0 * k))
        if k >= 2:
            tfp = tfp * x3 / ((3.0 * k - 3.0) * (3.0 * k - 1.0))
            fp += tfp
        f += tf
        g += tg
        gp += tgp
        af += np.abs(tf)
        ag += np.abs(tg)
        if k > 2 and np.all(np.abs(tf) < 1e-18 * np.abs(f)) and np.all(np.abs(tg) < 1e-18 * (np.abs(g) + 1e-300)):
            break
    return (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp, BI0 * f + BIP0 * g, BI0 * fp + BIP0 * gp,
            4.0 * _EPS * (AI0 * af - AIP0 * ag), 4.0 * _EPS * (BI0 * af + BIP0 * ag))


def _asym_sums_np(zeta):
    one = np.ones_like(zeta)
    u = 1.0
    zk = one.copy()
    ualt, valt, upos, vpos = one.copy(), one.copy(), one.copy(), one.copy()
    ueven, veven = one.copy(), one.copy()
    uodd, vodd = np.zeros_like(zeta), np.zeros_like(zeta)
    prev = one.copy()
    last = np.zeros_like(zeta)
    live = np.ones(zeta.shape, dtype=bool)
    for k in range(1, _MAX_ASYM):
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * (2.0 * k - 1.0) * k)
        zk = zk / zeta
        v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u
        tu = u * zk
        tv = v * zk
        mag = np.abs(tu)
        grow = live & (mag > prev)
        last = np.where(grow, prev, last)
        live = live & ~grow
        tu = np.where(live, tu, 0.0)
        tv = np.where(live, tv, 0.0)
        sgn = -1.0 if k % 2 == 1 else 1.0
        sj = -1.0 if (k // 2) % 2 == 1 else 1.0
        ualt += sgn * tu
        valt += sgn * tv
        upos += tu
        vpos += tv
        if k % 2 == 0:
            ueven += sj * tu
            veven += sj * tv
        else:
            uodd += sj * tu
            vodd += sj * tv
        last = np.where(live, mag, last)
        prev = np.where(live, mag, prev)
        live = live & (mag >= 1e-18)
        if not np.any(live):
            break
    return ualt, valt, upos, vpos, ueven, uodd, veven, vodd, last


def _asym_pos_np(x):
    zeta = 2.0 / 3.0 * x * np.sqrt(x)
    x14 = np.sqrt(np.sqrt(x))
    ualt, valt, upos, vpos, _, _, _, _, last = _asym_sums_np(zeta)
    em = np.exp(-zeta)
    ep = np.exp(zeta)
    ai = em / (2.0 * _SQRT_PI * x14) * ualt
    aip = -x14 * em / (2.0 * _SQRT_PI) * valt
    bi = ep / (_SQRT_PI * x14) * upos
    bip = x14 * ep / _SQRT_PI * vpos
    rel = 2.0 * last + 8.0 * _EPS
    return ai, aip, bi, bip, rel * np.abs(ai), rel * np.abs(bi)


def _asym_neg_np(x):
    z = -x
    zeta = 2.0 / 3.0 * z * np.sqrt(z)
    z14 = np.sqrt(np.sqrt(z))
    _, _, _, _, ueven, uodd, veven, vodd, last = _asym_sums_np(zeta)
    th = zeta - 0.25 * np.pi
    c, s = np.cos(th), np.sin(th)
    ai = (c * ueven + s * uodd) / (_SQRT_PI * z14)
    aip = z14 / _SQRT_PI * (s * veven - c * vodd)
    bi = (-s * ueven + c * uodd) / (_SQRT_PI * z14)
    bip = z14 / _SQRT_PI * (c * veven + s * vodd)
    env = 1.0 / (_SQRT_PI * z14)
    err = (2.0 * last + 8.0 * _EPS * (1.0 + zeta * _EPS)) * env + _EPS * zeta * env
    return ai, aip, bi, bip, err, err.copy()


def airy4_array_np(x):
    x = np.asarray(x, dtype=float)
    out = np.empty((6, x.size))
    m_mac = np.abs(x) <= MACLAURIN_R
    m_pos = x >= ASYM_R
    m_neg = x <= -ASYM_R
    m_mid_p = (x > MACLAURIN_R) & (x < ASYM_R)
    m_mid_n = (x < -MACLAURIN_R) & (x > -ASYM_R)
    for mask, fn in ((m_mac, _maclaurin_np), (m_pos, _asym_pos_np), (m_neg, _asym_neg_np)):
        if np.any(mask):
            out[:, mask] = np.array(fn(x[mask]))
    if np.any(m_mid_p):
        xm = x[m_mid_p]
        _, _, bi, bip, _, err_b = _maclaurin_np(xm)
        a9, ap9, _, _, e9, _ = _asym_pos_np(np.array([ASYM_R]))
        start = np.full_like(xm, ASYM_R)
        ai, aip = ode_walk_np(np.full_like(xm, a9[0]), np.full_like(xm, ap9[0]), start, xm, 0.0, 1.0, 0.0, _STEP_H)
        nst = np.ceil((ASYM_R - xm) / _STEP_H * 3.0) + 1
        err_a = (e9[0] / abs(a9[0]) + 4.0 * _EPS * nst) * np.abs(ai)
        out[:, m_mid_p] = np.array((ai, aip, bi, bip, err_a, err_b))
    if np.any(m_mid_n):
        xm = x[m_mid_n]
        zero = np.zeros_like(xm)
        ai, aip = ode_walk_np(np.full_like(xm, AI0), np.full_like(xm, AIP0), zero, xm, 0.0, 1.0, 0.0, _STEP_H)
        bi, bip = ode_walk_np(np.full_like(xm, BI0), np.full_like(xm, BIP0), zero, xm, 0.0, 1.0, 0.0, _STEP_H)
        ax = np.abs(xm)
        env = 1.0 / (_SQRT_PI * np.sqrt(np.sqrt(ax)))
        err = 8.0 * _EPS * (np.ceil(ax / _STEP_H * 3.0) + 1) * np.sqrt(ax) * env
        out[:, m_mid_n] = np.array((ai, aip, bi, bip, err, err))
    return out
