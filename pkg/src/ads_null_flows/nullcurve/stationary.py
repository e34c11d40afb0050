"""Stationary curves of the lowest flow and their explicit time evolution.

With sigma = sqrt(2/(h- - h+)) and delta_{h,mu}(x) the fundamental matrix of
the first-order Lame equation, the frames

    F+-(s) = delta_{h+-,mu}(sigma s) . diag(1/sqrt(sigma), sqrt(sigma))

satisfy the spinorial Frenet systems for the stationary bending (the
diagonal factor converts central-affine to proper-time normalization, and
cancels in gamma = F+ F-^{-1}).  The evolution is rigid:

    gamma(s, t) = Exp(t m+) gamma(s + 2 ell t) Exp(-t m-),

where the momenta

    m+- = [[0, 8 sqrt2 (h+- - 1)(mu - h+-) / D^{3/2}],
           [8 sqrt2 (h+- - 1 - mu) / D^{3/2}, 0]],      D = h- - h+,

are the conserved values of F (P_lam - 2 ell K_lam) F^{-1} at lam = +-1.
Conjugating m+- by the initial frames transports the formula to any other
frame normalization.
"""

from __future__ import annotations

import math
from typing import Literal, Tuple

import numpy as np

from ..config import DEFAULT, RunConfig
from ..kdvsol import StationaryBending
from ..lame import HeunLameEvaluator, _lame_solve
from .frames import SpinorFramePath


def stationary_momenta(spec: StationaryBending) -> Tuple[np.ndarray, np.ndarray, float]:
    """(m+, m-, ell) in the frame normalization F+-(0) = diag(1/sqrt sigma,
    sqrt sigma)."""
    d32 = spec.delta ** 1.5
    r8 = 8.0 * math.sqrt(2.0)

    def mk(h):
        return np.array([
            [0.0, r8 * (h - 1.0) * (spec.mu - h) / d32],
            [r8 * (h - 1.0 - spec.mu) / d32, 0.0],
        ])

    return mk(spec.h_plus), mk(spec.h_minus), spec.ell


def stationary_evolution(mu: float, h_plus: float, h_minus: float, t: float):
    """(Exp(t m+), Exp(t m-), ell): the two evolution factors at time t."""
    spec = StationaryBending(mu, h_plus, h_minus)
    m_plus, m_minus, ell = stationary_momenta(spec)
    return expm_offdiag(t * m_plus), expm_offdiag(t * m_minus), ell


def expm_offdiag(X: np.ndarray) -> np.ndarray:
    """exp of [[0, b], [c, 0]]: X^2 = bc Id, so the exponential closes in
    cosh/cos of sqrt(|bc|)."""
    b, c = float(X[0, 1]), float(X[1, 0])
    p = b * c
    if p > 0.0:
        w = math.sqrt(p)
        return math.cosh(w) * np.eye(2) + (math.sinh(w) / w) * X
    if p < 0.0:
        w = math.sqrt(-p)
        return math.cos(w) * np.eye(2) + (math.sin(w) / w) * X
    return np.eye(2) + X


def stationary_curve(mu: float, h_plus: float, h_minus: float, s_grid,
                     method: Literal["ode", "heun"] = "ode",
                     config: RunConfig = DEFAULT) -> SpinorFramePath:
    """Frame path of the stationary curve over the grid."""
    spec = StationaryBending(mu, h_plus, h_minus)
    s_grid = np.asarray(s_grid, dtype=float)
    sigma = spec.sigma
    S = np.diag([1.0 / math.sqrt(sigma), math.sqrt(sigma)])

    def delta_path(h):
        x_grid = sigma * s_grid
        if method == "heun":
            ev = HeunLameEvaluator(mu, h, config)
            return np.array([ev(x) for x in x_grid])
        frames = np.empty((len(x_grid), 2, 2))
        neg = x_grid[x_grid < 0]
        pos = x_grid[x_grid > 0]
        nz = int(np.sum(x_grid == 0.0))
        parts = []
        if len(neg):
            run = _lame_solve(mu, h, np.concatenate([[0.0], neg[::-1]]),
                              np.eye(2), config)[1:][::-1]
            parts.append(run)
        if nz:
            parts.append(np.tile(np.eye(2), (nz, 1, 1)))
        if len(pos):
            parts.append(_lame_solve(mu, h, np.concatenate([[0.0], pos]),
                                     np.eye(2), config)[1:])
        return np.concatenate(parts, axis=0)

    Fp = delta_path(h_plus) @ S
    Fm = delta_path(h_minus) @ S
    return SpinorFramePath(s_grid, Fp, Fm, spec.kappa(s_grid))


def evolve_stationary_path(spec: StationaryBending, s_grid, t: float,
                           method: Literal["ode", "heun"] = "ode",
                           config: RunConfig = DEFAULT,
                           init_plus: np.ndarray | None = None,
                           init_minus: np.ndarray | None = None) -> SpinorFramePath:
    """Closed-form evolved frames at time t.

    With the sigma normalization the evolved frames are
    Exp(t m+-) F+-(s + 2 ell t).  Re-normalizing the initial frame to
    init = C S (constant left factor C) just prepends C:
    C Exp(t m+-) F+-(s + 2 ell t), which starts at C S = init for t = 0, s = 0.
    """
    s_grid = np.asarray(s_grid, dtype=float)
    base = stationary_curve(spec.mu, spec.h_plus, spec.h_minus,
                            s_grid + 2.0 * spec.ell * t, method, config)
    m_plus, m_minus, _ = stationary_momenta(spec)
    sigma = spec.sigma
    S_inv = np.diag([math.sqrt(sigma), 1.0 / math.sqrt(sigma)])

    def prefactor(init, m):
        E = expm_offdiag(t * m)
        if init is None:
            return E
        return np.asarray(init, float) @ S_inv @ E

    Fp = prefactor(init_plus, m_plus)[None] @ base.Fplus
    Fm = prefactor(init_minus, m_minus)[None] @ base.Fminus
    return SpinorFramePath(s_grid, Fp, Fm, spec.kappa(s_grid, t), t_value=t)