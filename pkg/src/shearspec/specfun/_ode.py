"""Taylor-series stepping for y'' = q(x) y with quadratic q.

Both the Airy equation (q = x) and the Weber equation (q = a + x^2/4) are of
this form.  Around a centre c the local power series y(c + t) = sum b_n t^n
obeys the exact three-term recurrence

    (n + 2)(n + 1) b_{n+2} = A b_n + B b_{n-1} + C b_{n-2}

with q(c + t) = A + B t + C t^2, so one step costs a few dozen flops and
carries full double accuracy.  Marching towards the direction in which the
wanted solution grows (or oscillates) is stable; callers pick start points
accordingly.
"""
import math

import numpy as np

from .._backend import njit

_TERM_TOL = 1e-18
_MAX_TERMS = 120


@njit
def taylor_step(y, yp, A, B, C, h):
    """Advance (y, y') by h for y'' = (A + B t + C t^2) y."""
    b3 = 0.0  # b_{m-2}
    b2 = 0.0  # b_{m-1}
    b1 = y    # b_m
    b0 = yp   # b_{m+1}
    s = y + yp * h
    sp = yp
    hm = h  # h^(m+1)
    small = 0
    m = 0
    while m < _MAX_TERMS:
        bn = (A * b1 + B * b2 + C * b3) / ((m + 2.0) * (m + 1.0))
        sp += (m + 2.0) * bn * hm
        hm *= h
        t = bn * hm
        s += t
        scale = abs(s) + abs(sp * h) + 1e-300
        if abs(t) < _TERM_TOL * scale and abs((m + 2.0) * bn * hm) < _TERM_TOL * scale * (abs(h) + 1.0):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        b3 = b2
        b2 = b1
        b1 = b0
        b0 = bn
        m += 1
    return s, sp


@njit
def ode_walk(y, yp, x0, x1, q0, q1, q2, hmax):
    """March (y, y') from x0 to x1 for y'' = (q0 + q1 x + q2 x^2) y.

    Returns (y(x1), y'(x1), number_of_steps).
    """
    x = x0
    nsteps = 0
    direction = 1.0 if x1 >= x0 else -1.0
    while (x1 - x) * direction > 0.0:
        qa = abs(q0 + q1 * x + q2 * x * x)
        xe = x + direction * hmax
        qb = abs(q0 + q1 * xe + q2 * xe * xe)
        qm = max(qa, qb, abs(q0))
        h = min(hmax, 1.0 / math.sqrt(qm + 1e-300))
        if (x1 - x) * direction <= h:
            h = (x1 - x) * direction
        h *= direction
        A = q0 + q1 * x + q2 * x * x
        B = q1 + 2.0 * q2 * x
        y, yp = taylor_step(y, yp, A, B, q2, h)
        x += h
        nsteps += 1
    return y, yp, nsteps


def taylor_step_np(y, yp, A, B, C, h):
    """Vectorised ``taylor_step``: every argument is an array of one shape."""
    b3 = np.zeros_like(y)
    b2 = np.zeros_like(y)
    b1 = y.copy()
    b0 = yp.copy()
    s = y + yp * h
    sp = yp.copy()
    hm = h.copy()
    small = np.zeros(y.shape, dtype=int)
    for m in range(_MAX_TERMS):
        bn = (A * b1 + B * b2 + C * b3) / ((m + 2.0) * (m + 1.0))
        dterm = (m + 2.0) * bn * hm
        sp += dterm
        hm = hm * h
        t = bn * hm
        s += t
        scale = np.abs(s) + np.abs(sp * h) + 1e-300
        ok = (np.abs(t) < _TERM_TOL * scale) & (np.abs(dterm * h) < _TERM_TOL * scale * (np.abs(h) + 1.0))
        small = np.where(ok, small + 1, 0)
        if np.all(small >= 3):
            break
        b3, b2, b1, b0 = b2, b1, b0, bn
    return s, sp


def ode_walk_np(y, yp, x0, x1, q0, q1, q2, hmax):
    """Vectorised ``ode_walk`` using one common step count for all elements.

    ``y, yp, x0, x1`` are arrays; the q coefficients are scalars.  Each
    element takes M equal steps of (x1 - x0)/M, with M large enough for the
    most demanding element.
    """
    y = np.asarray(y, dtype=float).copy()
    yp = np.asarray(yp, dtype=float).copy()
    x0 = np.broadcast_to(np.asarray(x0, dtype=float), y.shape)
    x1 = np.broadcast_to(np.asarray(x1, dtype=float), y.shape)
    if y.size == 0:
        return y, yp
    dx = x1 - x0

    def q_abs(x):
        return np.abs(q0 + q1 * x + q2 * x * x)

    qmax = np.maximum(np.maximum(q_abs(x0), q_abs(x1)), abs(q0))
    hlim = np.minimum(hmax, 1.0 / np.sqrt(qmax + 1e-300))
    M = int(np.max(np.ceil(np.abs(dx) / hlim))) if np.any(dx != 0) else 0
    if M == 0:
        return y, yp
    h = dx / M
    x = x0.copy()
    for _ in range(M):
        A = q0 + q1 * x + q2 * x * x
        B = q1 + 2.0 * q2 * x
        y, yp = taylor_step_np(y, yp, A, B, np.full_like(x, q2), h)
        x = x + h
    return y, yp
