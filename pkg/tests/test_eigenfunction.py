import math

import numpy as np
import pytest

from shearspec import oracle
from shearspec.eigenfunction import (
    build, count_nodes, dump_profile, evaluate, expectation, node_positions, overlap, probability_left,
    schrodinger_residual,
)
from shearspec.family import MonomialFamily, ShearParam, turning_points
from shearspec.spectrum import find_levels

LIN = MonomialFamily.linear()
OSC = MonomialFamily.harmonic()
FAMS = pytest.mark.parametrize("fam", [LIN, OSC], ids=["linear", "harmonic"])
NUS = [0.51, 0.6, 0.75, 0.9, 1.0]

# pi^(-1/4): trapezoid normalisation of exp(-x^2/2) on [-12, 12] with 200001 points
GAUSS_PEAK = 0.7511255444649425


def states(fam, nu, n_max=4):
    s = ShearParam(nu)
    return [build(fam, s, lev) for lev in find_levels(fam, s, n_max)]


def test_gauss_peak_oracle():
    x = np.linspace(-12.0, 12.0, 200001)
    norm = np.trapezoid(np.exp(-x * x), x)
    assert 1.0 / math.sqrt(norm) == pytest.approx(GAUSS_PEAK, rel=1e-12)


def test_symmetric_oscillator_ground_state():
    psi = states(OSC, 1.0, 0)[0]
    assert psi.alpha_minus / psi.alpha_plus == pytest.approx(1.0, rel=1e-12)
    x = np.linspace(0.1, 5.0, 50)
    assert np.allclose(psi(x), psi(-x), rtol=1e-12, atol=1e-16)
    assert evaluate(psi, 0.0) == pytest.approx(GAUSS_PEAK, rel=1e-10)
    assert np.allclose(psi(x), GAUSS_PEAK * np.exp(-x * x / 2), rtol=1e-9, atol=1e-15)


def test_symmetric_linear_parity():
    x = np.linspace(0.05, 6.0, 60)
    for psi in states(LIN, 1.0, 4):
        sign = 1.0 if psi.n % 2 == 0 else -1.0
        assert np.allclose(psi(-x), sign * psi(x), rtol=1e-9, atol=1e-12)


@FAMS
def test_expelled_from_left_near_wall(fam):
    psi = states(fam, 0.5001, 0)[0]
    assert abs(psi(0.0)) / psi.peak < 0.05


@FAMS
@pytest.mark.parametrize("nu", [0.5001] + NUS)
def test_invariants_and_nodes(fam, nu):
    for psi in states(fam, nu):
        dv, dd = psi.matching_residuals()
        assert dv < 1e-10 and dd < 1e-8
        assert expectation(psi, np.ones_like) == pytest.approx(1.0, abs=1e-8)
        assert count_nodes(psi) == psi.n
        x_min, x_max = psi.tail_cutoffs
        assert x_min < 0.0 < x_max
        assert abs(psi(x_max)) < 1e-13 and abs(psi(x_min)) < 1e-13
        assert psi(x_max + 1.0) == 0.0


def test_node_examples():
    assert count_nodes(states(LIN, 0.7, 3)[3]) == 3
    assert count_nodes(states(OSC, 0.55, 2)[2]) == 2
    assert count_nodes(states(LIN, 0.6, 0)[0]) == 0
    # psi_3 is proportional to H_3(x) = 8x^3 - 12x
    nodes = node_positions(states(OSC, 1.0, 3)[3])
    assert np.allclose(nodes, [-math.sqrt(1.5), 0.0, math.sqrt(1.5)], atol=1e-10)


@FAMS
@pytest.mark.parametrize("nu", [0.55, 0.8])
def test_schrodinger_residual(fam, nu):
    rng = np.random.default_rng(11)
    for psi in states(fam, nu, 3):
        tp = turning_points(fam, psi.shear, psi.eps)
        x = rng.uniform(tp.a, tp.b, 100)
        assert np.max(schrodinger_residual(psi, x)) < 1e-6 * psi.peak


@FAMS
def test_orthogonality(fam):
    psis = states(fam, 0.65)
    for i in range(5):
        for j in range(i):
            assert abs(overlap(psis[i], psis[j])) < 1e-6


@FAMS
def test_probability_left(fam):
    for psi in states(fam, 1.0, 2):
        assert probability_left(psi) == pytest.approx(0.5, abs=1e-8)
    assert probability_left(states(fam, 0.5001, 0)[0]) < 0.01
    p9 = probability_left(states(fam, 0.9, 0)[0])
    p6 = probability_left(states(fam, 0.6, 0)[0])
    assert p9 > p6


def _fd_ground(fam, nu):
    s = ShearParam(nu)
    lam = oracle.lowest_eigenvalues(T := oracle.discretize(fam, s, (8.0, 14.0), 3000), 1)[0]
    v = oracle.eigenvector(T, lam)
    return T.grid, v, T.h


@FAMS
def test_probability_left_against_oracle(fam):
    for nu in (0.6, 0.9):
        x, v, h = _fd_ground(fam, nu)
        # trapezoid weights: the node at x = 0 counts half
        p_fd = h * (np.sum(v[x < -h / 2] ** 2) + 0.5 * np.sum(v[np.abs(x) < h / 2] ** 2))
        assert probability_left(states(fam, nu, 0)[0]) == pytest.approx(p_fd, abs=1e-4)


def test_peak_shift_right():
    x = np.linspace(-4.0, 8.0, 24001)
    p6 = states(LIN, 0.6, 0)[0]
    p1 = states(LIN, 1.0, 0)[0]
    a6, a1 = x[np.argmax(np.abs(p6(x)))], x[np.argmax(np.abs(p1(x)))]
    assert a6 > a1 and a6 > 0.0
    xg, v, h = _fd_ground(LIN, 0.6)
    assert a6 == pytest.approx(xg[np.argmax(np.abs(v))], abs=2 * h + 1e-3)


def test_dump_profile():
    psi = states(OSC, 1.0, 1)[1]
    table = dump_profile(psi, np.linspace(-3.0, 3.0, 7))
    assert table.shape == (7, 2)
    assert table[3, 0] == 0.0 and abs(table[3, 1]) < 1e-12
    assert np.allclose(table[:3, 1], -table[6:3:-1, 1], atol=1e-12)


def test_continuity_at_origin():
    psi = states(LIN, 0.63, 2)[2]
    (vl, dl), (vr, dr) = psi.one_sided_at_zero()
    assert abs(vl - vr) < 1e-10 * psi.peak
    assert psi(-1e-14) == pytest.approx(psi(0.0), abs=1e-10)


def test_hard_wall_state():
    psi = states(LIN, 0.5, 1)[1]
    assert psi.tail_cutoffs[0] == 0.0
    assert psi(-0.5) == 0.0 and abs(psi(0.0)) < 1e-12
    assert count_nodes(psi) == 1
    assert probability_left(psi) == 0.0
