"""Spinor frames, the curve construction, and the finite-difference bending
oracle.

A bending function kappa determines two central-affine frames through

    F+' = F+ [[0, kappa + 1], [1, 0]],    F-' = F- [[0, kappa - 1], [1, 0]],

and the curve gamma = F+ F-^{-1} on the unimodular quadric, parameterized by
its proper time (<gamma'', gamma''> = 4).  The first columns eta+- of F+- are
the associated pair of star-shaped cousins, with central affine curvatures
kappa +- 1 (difference exactly 2).  The Cartan frame along gamma is

    gamma = F+ P1 F-^{-1}, T = F+ P2 F-^{-1}, N = F+ P3 F-^{-1},
    B = F+ P4 F-^{-1},

with T = gamma'/sqrt2, N = gamma''/2, and the bending recovered by
kappa = -<gamma''', gamma'''>/16 (the oracle below, used for validation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..config import DEFAULT, RunConfig
from .metric import P2, P3, P4, ads_inner


class GridTooCoarse(ValueError):
    pass


class InvalidPair(ValueError):
    pass


@dataclass
class SpinorFramePath:
    s_grid: np.ndarray
    Fplus: np.ndarray      # (n, 2, 2)
    Fminus: np.ndarray     # (n, 2, 2)
    kappa: np.ndarray      # (n,)
    t_value: float = 0.0
    det_drift: float = 0.0

    def gamma(self) -> np.ndarray:
        return self.Fplus @ np.linalg.inv(self.Fminus)

    def cousins(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.Fplus[:, :, 0].copy(), self.Fminus[:, :, 0].copy()


@dataclass
class CartanFramePath:
    s_grid: np.ndarray
    gamma: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray


def integrate_spinor_frames(kappa: Callable[[float], float], s_grid,
                            init_plus: Optional[np.ndarray] = None,
                            init_minus: Optional[np.ndarray] = None,
                            config: RunConfig = DEFAULT) -> SpinorFramePath:
    """Adaptive integration of both frame systems over the grid, with
    unimodular renormalization of the samples."""
    s_grid = np.asarray(s_grid, dtype=float)
    if len(s_grid) > 1 and np.any(np.diff(s_grid) <= 0):
        raise ValueError("s_grid must be strictly increasing")
    init_plus = np.eye(2) if init_plus is None else np.asarray(init_plus, float)
    init_minus = np.eye(2) if init_minus is None else np.asarray(init_minus, float)

    def rhs(s, y):
        k = kappa(s)
        ap, bp, cp, dp, am, bm, cm, dm = y
        kp, km = k + 1.0, k - 1.0
        return (bp, kp * ap, dp, kp * cp, bm, km * am, dm, km * cm)

    y0 = [init_plus[0, 0], init_plus[0, 1], init_plus[1, 0], init_plus[1, 1],
          init_minus[0, 0], init_minus[0, 1], init_minus[1, 0], init_minus[1, 1]]
    if len(s_grid) == 1:
        Fp = init_plus[None, :, :].copy()
        Fm = init_minus[None, :, :].copy()
        return SpinorFramePath(s_grid, Fp, Fm,
                               np.array([kappa(float(s_grid[0]))]))
    sol = solve_ivp(rhs, (float(s_grid[0]), float(s_grid[-1])), y0,
                    method="DOP853", rtol=config.integrator_rel_tol,
                    atol=config.integrator_abs_tol, t_eval=s_grid)
    if not sol.success:
        raise RuntimeError(f"frame integration failed: {sol.message}")
    Fp = np.empty((len(s_grid), 2, 2))
    Fm = np.empty((len(s_grid), 2, 2))
    Fp[:, 0, 0], Fp[:, 0, 1], Fp[:, 1, 0], Fp[:, 1, 1] = sol.y[0:4]
    Fm[:, 0, 0], Fm[:, 0, 1], Fm[:, 1, 0], Fm[:, 1, 1] = sol.y[4:8]
    detp = np.linalg.det(Fp)
    detm = np.linalg.det(Fm)
    drift = float(max(np.abs(detp - 1.0).max(), np.abs(detm - 1.0).max()))
    Fp /= np.sqrt(np.abs(detp))[:, None, None]
    Fm /= np.sqrt(np.abs(detm))[:, None, None]
    kap = np.array([kappa(float(s)) for s in s_grid])
    return SpinorFramePath(s_grid, Fp, Fm, kap, det_drift=drift)


def curve_and_cousins(path: SpinorFramePath):
    """(gamma samples, eta+, eta-)."""
    return path.gamma(), *path.cousins()


def cartan_frame(path: SpinorFramePath) -> CartanFramePath:
    Fm_inv = np.linalg.inv(path.Fminus)
    Fp = path.Fplus
    return CartanFramePath(
        path.s_grid,
        Fp @ Fm_inv,
        Fp @ P2 @ Fm_inv,
        Fp @ P3 @ Fm_inv,
        Fp @ P4 @ Fm_inv,
    )


_D3 = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0


def bending_oracle(gamma: np.ndarray, ds: Optional[float] = None,
                   s_grid: Optional[np.ndarray] = None) -> np.ndarray:
    """kappa = -<gamma''', gamma'''>/16 by 7-point central differences on a
    uniform grid; validation only, never feeds a construction.  The first
    and last 3 samples come out NaN."""
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 3 or gamma.shape[0] < 7:
        raise GridTooCoarse("need at least 7 samples of gamma")
    if ds is None:
        if s_grid is None:
            raise ValueError("pass ds or s_grid")
        steps = np.diff(s_grid)
        if np.abs(steps - steps[0]).max() > 1e-9 * abs(steps[0]):
            raise GridTooCoarse("bending oracle needs a uniform grid")
        ds = float(steps[0])
    n = gamma.shape[0]
    out = np.full(n, np.nan)
    for i in range(3, n - 3):
        g3 = np.tensordot(_D3, gamma[i - 3: i + 4], axes=(0, 0)) / ds ** 3
        out[i] = -ads_inner(g3, g3) / 16.0
    return out


def proper_time_checks(gamma: np.ndarray, ds: float):
    """(max |<gamma,gamma>+1|, max |<gamma',gamma'>|, max |<gamma'',gamma''>-4|)
    with 4th-order central differences on the interior samples."""
    g = np.asarray(gamma, dtype=float)
    q0 = np.abs(ads_inner(g, g) + 1.0).max()
    d1 = (g[:-4] - 8.0 * g[1:-3] + 8.0 * g[3:-1] - g[4:]) / (12.0 * ds)
    q1 = np.abs(ads_inner(d1, d1)).max()
    d2 = (-g[:-4] + 16.0 * g[1:-3] - 30.0 * g[2:-2]
          + 16.0 * g[3:-1] - g[4:]) / (12.0 * ds ** 2)
    q2 = np.abs(ads_inner(d2, d2) - 4.0).max()
    return float(q0), float(q1), float(q2)


# ----------------------------------------------------------- constant case

def constant_frame_factor(k: float, s):
    """exp(s [[0, k], [1, 0]]): trigonometric for k < 0, unipotent for k = 0,
    hyperbolic for k > 0.  s may be an array."""
    s = np.asarray(s, dtype=float)
    out = np.empty(s.shape + (2, 2))
    if k < 0.0:
        w = math.sqrt(-k)
        c, sn = np.cos(w * s), np.sin(w * s)
        out[..., 0, 0] = c
        out[..., 0, 1] = -w * sn
        out[..., 1, 0] = sn / w
        out[..., 1, 1] = c
    elif k == 0.0:
        out[..., 0, 0] = 1.0
        out[..., 0, 1] = 0.0
        out[..., 1, 0] = s
        out[..., 1, 1] = 1.0
    else:
        w = math.sqrt(k)
        c, sh = np.cosh(w * s), np.sinh(w * s)
        out[..., 0, 0] = c
        out[..., 0, 1] = w * sh
        out[..., 1, 0] = sh / w
        out[..., 1, 1] = c
    return out


def constant_bending_frames(kappa0: float, s):
    """(F+, F-) closed forms for constant bending; case boundaries at
    kappa0 = -1 (F+ unipotent) and kappa0 = +1 (F- unipotent)."""
    return constant_frame_factor(kappa0 + 1.0, s), constant_frame_factor(kappa0 - 1.0, s)


def constant_bending_path(kappa0: float, s_grid) -> SpinorFramePath:
    s_grid = np.asarray(s_grid, dtype=float)
    Fp, Fm = constant_bending_frames(kappa0, s_grid)
    return SpinorFramePath(s_grid, Fp, Fm, np.full(len(s_grid), kappa0))


def constant_case_tag(kappa0: float) -> str:
    """The five-fold trichotomy of the two factors for constant bending."""
    def tag(k):
        return "E" if k < 0 else ("P" if k == 0 else "H")
    return f"({tag(kappa0 + 1.0)},{tag(kappa0 - 1.0)})"


def closed_constant(m: int, n: int):
    """Exact data of the closed constant-bending curves:

        kappa_{m,n} = -(m^2 + n^2)/(m^2 - n^2),  m > n >= 1 coprime;
        m + n even: spin 1/2, torus knot ((n-m)/2, (n+m)/2)
        m + n odd:  spin 1,   torus knot (n-m, n+m)

    Returns (kappa as Fraction, spin as Fraction, knot pair).
    """
    if m <= n or n < 1 or math.gcd(m, n) != 1:
        raise InvalidPair("need coprime integers m > n >= 1")
    kappa = Fraction(-(m * m + n * n), m * m - n * n)
    if (m + n) % 2 == 0:
        return kappa, Fraction(1, 2), ((n - m) // 2, (n + m) // 2)
    return kappa, Fraction(1), (n - m, n + m)


def constant_curve_period(m: int, n: int) -> float:
    """Least period of the closed constant-bending curve: the common time
    pi sqrt((m^2 - n^2)/2) at which both factors reach +-Id, doubled when
    the two signs disagree (m + n odd)."""
    if m <= n or n < 1 or math.gcd(m, n) != 1:
        raise InvalidPair("need coprime integers m > n >= 1")
    s_star = math.pi * math.sqrt((m * m - n * n) / 2.0)
    return s_star if (m + n) % 2 == 0 else 2.0 * s_star
