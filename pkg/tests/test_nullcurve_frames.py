"""Frame integration, curve construction, Cartan frame, bending oracle,
constant-bending closed forms."""

import math
from fractions import Fraction

import numpy as np
import pytest

from ads_null_flows.nullcurve import (
    CARTAN_GRAM,
    InvalidPair,
    ads_inner,
    bending_oracle,
    cartan_frame,
    closed_constant,
    constant_bending_frames,
    constant_bending_path,
    constant_case_tag,
    constant_curve_period,
    curve_and_cousins,
    future_directed,
    gram_matrix,
    integrate_spinor_frames,
    proper_time_checks,
    q_form,
)
from ads_null_flows.nullcurve.frames import SpinorFramePath


def test_constant_kappa_matches_closed_form():
    kappa0 = -1.45
    grid = np.linspace(0.0, 5.0, 101)
    path = integrate_spinor_frames(lambda s: kappa0, grid)
    Fp, Fm = constant_bending_frames(kappa0, grid)
    assert np.abs(path.Fplus - Fp).max() <= 1e-9
    assert np.abs(path.Fminus - Fm).max() <= 1e-9
    assert path.det_drift <= 1e-9


def test_zero_kappa_rotation_block():
    grid = np.linspace(0.0, 3.0, 61)
    path = integrate_spinor_frames(lambda s: 0.0, grid)
    c, s = np.cos(grid), np.sin(grid)
    rot = np.empty((len(grid), 2, 2))
    rot[:, 0, 0], rot[:, 0, 1] = c, -s
    rot[:, 1, 0], rot[:, 1, 1] = s, c
    assert np.abs(path.Fminus - rot).max() <= 1e-10


def test_curve_and_cousins_basics():
    kappa0 = -1.45
    grid = np.linspace(0.0, 6.0, 400)
    path = constant_bending_path(kappa0, grid)
    gamma, eta_p, eta_m = curve_and_cousins(path)
    assert np.abs(gamma[0] - np.eye(2)).max() <= 1e-14
    assert np.abs(q_form(gamma) + 1.0).max() <= 1e-10
    # central affine normalization and the cousin curvature defect k+ - k- = 2
    ds = grid[1] - grid[0]
    for eta, shift in ((eta_p, kappa0 + 1.0), (eta_m, kappa0 - 1.0)):
        d1 = (eta[:-4] - 8 * eta[1:-3] + 8 * eta[3:-1] - eta[4:]) / (12 * ds)
        d2 = (-eta[:-4] + 16 * eta[1:-3] - 30 * eta[2:-2]
              + 16 * eta[3:-1] - eta[4:]) / (12 * ds ** 2)
        unit = eta[2:-2, 0] * d1[:, 1] - eta[2:-2, 1] * d1[:, 0]
        assert np.abs(unit - 1.0).max() <= 1e-6
        curv = -(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
        assert np.abs(curv - shift).max() <= 1e-5


def test_cousin_roundtrip_rebuilds_curve():
    grid = np.linspace(0.0, 4.0, 120)
    path = integrate_spinor_frames(lambda s: 0.4 * math.sin(s) - 1.2, grid)
    gamma = path.gamma()
    # rebuild the frames from the cousin curves and their derivative columns
    Fp = np.stack([path.Fplus[:, :, 0], path.Fplus[:, :, 1]], axis=-1)
    Fm = np.stack([path.Fminus[:, :, 0], path.Fminus[:, :, 1]], axis=-1)
    rebuilt = Fp @ np.linalg.inv(Fm)
    assert np.abs(rebuilt - gamma).max() <= 1e-8


def test_cartan_frame_gram_and_derivatives():
    grid = np.linspace(0.0, 4.0, 801)
    ds = grid[1] - grid[0]
    path = integrate_spinor_frames(lambda s: 0.3 * math.cos(s) - 1.0, grid)
    fr = cartan_frame(path)
    for i in (0, 200, 400, 799):
        G = gram_matrix([fr.gamma[i], fr.T[i], fr.N[i], fr.B[i]])
        assert np.abs(G - CARTAN_GRAM).max() <= 1e-6
    g = fr.gamma
    d1 = (g[:-4] - 8 * g[1:-3] + 8 * g[3:-1] - g[4:]) / (12 * ds)
    assert np.abs(fr.T[2:-2] - d1 / math.sqrt(2.0)).max() <= 1e-6
    d2 = (-g[:-4] + 16 * g[1:-3] - 30 * g[2:-2] + 16 * g[3:-1] - g[4:]) / (12 * ds ** 2)
    assert np.abs(fr.N[2:-2] - d2 / 2.0).max() <= 1e-6


def test_curve_is_null_and_future_directed():
    grid = np.linspace(0.0, 4.0, 501)
    ds = grid[1] - grid[0]
    path = constant_bending_path(-1.45, grid)
    gamma = path.gamma()
    q0, q1, q2 = proper_time_checks(gamma, ds)
    assert q0 <= 1e-10 and q1 <= 1e-6 and q2 <= 1e-4
    d1 = (gamma[2:] - gamma[:-2]) / (2 * ds)
    for i in range(0, len(d1), 50):
        assert future_directed(gamma[i + 1], d1[i])


def test_bending_oracle_constant():
    grid = np.linspace(0.0, 6.0, 1201)
    path = constant_bending_path(-1.45, grid)
    kap = bending_oracle(path.gamma(), s_grid=grid)
    interior = kap[3:-3]
    assert np.abs(interior + 1.45).max() <= 1e-4


def test_bending_oracle_needs_enough_points():
    from ads_null_flows.nullcurve import GridTooCoarse
    with pytest.raises(GridTooCoarse):
        bending_oracle(np.tile(np.eye(2), (5, 1, 1)), ds=0.1)


# ------------------------------------------------------------ constant case

def test_constant_frames_case_tags():
    assert constant_case_tag(-1.45) == "(E,E)"
    assert constant_case_tag(-1.0) == "(P,E)"
    assert constant_case_tag(-0.5) == "(H,E)"
    assert constant_case_tag(1.0) == "(H,P)"
    assert constant_case_tag(2.0) == "(H,H)"


def test_constant_frames_trig_form():
    kappa0 = -1.45
    s = np.linspace(0, 3, 7)
    Fp, Fm = constant_bending_frames(kappa0, s)
    for k, F in ((kappa0 + 1, Fp), (kappa0 - 1, Fm)):
        w = math.sqrt(abs(k))
        assert np.abs(F[:, 0, 0] - np.cos(w * s)).max() <= 1e-14
        assert np.abs(F[:, 0, 1] + w * np.sin(w * s)).max() <= 1e-14
        assert np.abs(F[:, 1, 0] - np.sin(w * s) / w).max() <= 1e-14


def test_constant_frames_unipotent_and_hyperbolic():
    Fp, _ = constant_bending_frames(-1.0, 2.5)
    assert np.abs(Fp - np.array([[1.0, 0.0], [2.5, 1.0]])).max() <= 1e-15
    Fp2, Fm2 = constant_bending_frames(2.0, 1.0)
    for F, k in ((Fp2, 3.0), (Fm2, 1.0)):
        assert np.trace(F) > 2.0  # hyperbolic one-parameter factors


def test_closed_constant_examples():
    kappa, spin, knot = closed_constant(7, 3)
    assert kappa == Fraction(-29, 20)
    assert spin == Fraction(1, 2)
    assert knot == (-2, 5)
    kappa, spin, knot = closed_constant(8, 3)
    assert kappa == Fraction(-73, 55)
    assert spin == Fraction(1)
    assert knot == (-5, 11)


def test_closed_constant_rejects():
    for m, n in ((3, 7), (6, 3), (4, 4)):
        with pytest.raises(InvalidPair):
            closed_constant(m, n)


def test_constant_period_commensurability():
    for m, n in ((7, 3), (8, 3), (5, 2)):
        kappa, _, _ = closed_constant(m, n)
        k = float(kappa)
        rho_p = 2 * math.pi / math.sqrt(abs(k + 1))
        rho_m = 2 * math.pi / math.sqrt(abs(k - 1))
        assert rho_p / rho_m == pytest.approx(m / n, rel=1e-12)
        P = constant_curve_period(m, n)
        Fp, Fm = constant_bending_frames(k, P)
        sign = 1.0 if (m + n) % 2 else -1.0
        # at the curve period both factors are at +Id (odd sum) or -Id (even)
        assert np.abs(Fp - sign * np.eye(2)).max() <= 1e-9
        assert np.abs(Fm - sign * np.eye(2)).max() <= 1e-9
