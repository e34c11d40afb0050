"""Floquet theory for the first-order Lame equation

    f'' + (h - 2 mu sn^2(s, mu)) f = 0.

The fundamental matrix, arranged as

    delta(s) = [[cl, cl'], [sl, sl']],   delta(0) = Id,
    delta'   = delta [[0, 2 mu sn^2 - h], [1, 0]],

transports by left multiplication over the potential period:
delta(s + 2K) = M delta(s) with monodromy M = delta(2K).  An eigenvalue h is
in the Floquet spectrum when M has finite order; its characteristic exponent
q in [0,1] is the eigenvalue phase over pi, i.e. tau(h) := tr M / 2 =
cos(q pi).

Eigenvalue search:
  * q in (0,1): tau - cos(q pi) changes sign at every crossing, so uniform
    scan bracketing + bisection works directly.  Admissible domain
    (mu, 1) u (1+mu, inf).
  * q in {0,1}: tau only touches +-1 (the potential is one-gap: all
    band-edge pairs above 1+mu collapse to double points M = +-Id), so the
    bracketed function is the off-diagonal entry M21 = sl(2K), whose zeros
    are simple (Dirichlet spectrum); roots are then filtered by
    |tau -+ 1| <= tol.  Admissible domain (1+mu, inf).

The fundamental solutions are produced two independent ways: direct ODE
integration, and the closed form through the two local Heun functions

    cl~(s) = Hl1(mu,h; sn^2) sqrt(1 - mu sn^2)
    sl~(s) = Hl2(mu,h; sn^2) sqrt(1 - mu sn^2) sn

which equal (cl, sl) on the base cell [-K, K] and extend to the line by
delta(s) = M^p delta~(s - 2pK).  M itself is recovered from the one-sided
limits Q+- of the building-block matrix at +-K as M = Q+ Q-^{-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Literal, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .config import DEFAULT, RunConfig
from .specfun import HeunEvaluator, complete_elliptic, jacobi_sncndn, lame_heun_params
from .specfun.elliptic import _check_mu


class SearchExhausted(RuntimeError):
    """The scan ceiling produced fewer eigenvalues than requested."""


class LimitUnstable(RuntimeError):
    """Richardson extrapolation of a half-period limit failed to settle."""


@dataclass
class FloquetRecord:
    mu: float
    q_num: int
    q_den: int
    index: int
    h: float
    monodromy: np.ndarray
    order: Optional[int]          # None = no n <= order_max with M^n = Id

    @property
    def q(self) -> float:
        return self.q_num / self.q_den

    @property
    def tau(self) -> float:
        return 0.5 * float(np.trace(self.monodromy))


@dataclass
class LameSolutionPath:
    mu: float
    h: float
    s_grid: np.ndarray
    cl: np.ndarray
    clp: np.ndarray
    sl: np.ndarray
    slp: np.ndarray
    method: Literal["ode", "heun"]

    def wronskian(self) -> np.ndarray:
        return self.cl * self.slp - self.clp * self.sl

    def matrices(self) -> np.ndarray:
        out = np.empty((len(self.s_grid), 2, 2))
        out[:, 0, 0], out[:, 0, 1] = self.cl, self.clp
        out[:, 1, 0], out[:, 1, 1] = self.sl, self.slp
        return out


def _lame_rhs_factory(mu: float, h: float):
    """Frame + Jacobi triple as one autonomous-in-arithmetic system.

    Carrying (sn, cn, dn) as extra states removes all special-function calls
    from the right-hand side; their own ODEs (sn' = cn dn, cn' = -sn dn,
    dn' = -mu sn cn) are integrated at the same tolerance.
    """
    def rhs(_, y):
        a, b, c, d, sn, cn, dn = y
        w = 2.0 * mu * sn * sn - h
        return (b, w * a, d, w * c, cn * dn, -sn * dn, -mu * sn * cn)
    return rhs


def _lame_solve(mu: float, h: float, s_eval: np.ndarray, Y0: np.ndarray,
                config: RunConfig) -> np.ndarray:
    """Frames (n,2,2) at s_eval (monotone, starting at the initial point)."""
    s0 = float(s_eval[0])
    sn0, cn0, dn0 = jacobi_sncndn(s0, mu)
    y0 = [Y0[0, 0], Y0[0, 1], Y0[1, 0], Y0[1, 1], sn0, cn0, dn0]
    if len(s_eval) == 1:
        return np.asarray(Y0, dtype=float)[None, :, :]
    sol = solve_ivp(_lame_rhs_factory(mu, h), (s0, float(s_eval[-1])), y0,
                    method="DOP853", rtol=config.integrator_rel_tol,
                    atol=config.integrator_abs_tol, t_eval=s_eval)
    if not sol.success:
        raise RuntimeError(f"Lame integration failed: {sol.message}")
    frames = np.empty((len(s_eval), 2, 2))
    frames[:, 0, 0], frames[:, 0, 1] = sol.y[0], sol.y[1]
    frames[:, 1, 0], frames[:, 1, 1] = sol.y[2], sol.y[3]
    return frames


def lame_monodromy(mu: float, h: float, config: RunConfig = DEFAULT) -> np.ndarray:
    """delta(2K(mu)): frame transport over one potential period."""
    mu = _check_mu(mu)
    K, _ = complete_elliptic(mu)
    M = _lame_solve(mu, h, np.array([0.0, 2.0 * K]), np.eye(2), config)[-1]
    det = float(np.linalg.det(M))
    if abs(det - 1.0) > 1e-10:
        raise RuntimeError(f"monodromy determinant drift {det - 1.0:.2e}")
    return M


def tau(mu: float, h: float, config: RunConfig = DEFAULT) -> float:
    """Half the monodromy trace; the Floquet discriminant over 2."""
    return 0.5 * float(np.trace(lame_monodromy(mu, h, config)))


def monodromy_order(M: np.ndarray, config: RunConfig = DEFAULT) -> Optional[int]:
    """Smallest n <= order_max with ||M^n - Id||_max <= order_tol, else None."""
    P = np.eye(2)
    for n in range(1, config.order_max + 1):
        P = P @ M
        if np.abs(P - np.eye(2)).max() <= config.order_tol:
            return n
    return None


def _scan_iter(lo: float, hi: float, config: RunConfig):
    h = lo
    while h < hi:
        yield h
        h += config.scan_step_fine if h < config.scan_step_switch else config.scan_step_coarse
    yield hi


def _refine(f, a, b, fa, fb, xtol):
    from scipy.optimize import brentq
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    return float(brentq(f, a, b, xtol=xtol, rtol=8.9e-16))


def floquet_search(mu: float, q_num: int, q_den: int, count: int,
                   config: RunConfig = DEFAULT) -> List[FloquetRecord]:
    """First `count` Floquet eigenvalues with characteristic exponent
    q = q_num/q_den, in increasing order."""
    mu = _check_mu(mu)
    if q_den <= 0 or q_num < 0 or q_num > q_den or math.gcd(q_num, q_den) != 1:
        raise ValueError("q must be a reduced fraction in [0, 1]")
    if count < 1:
        raise ValueError("count must be >= 1")
    q = q_num / q_den
    eps = config.band_edge_margin
    records: List[FloquetRecord] = []

    def emit(h_root: float):
        M = lame_monodromy(mu, h_root, config)
        records.append(FloquetRecord(mu, q_num, q_den, len(records), h_root, M,
                                     monodromy_order(M, config)))

    if 0 < q_num < q_den:
        target = math.cos(q * math.pi)
        segments = [(mu + eps, 1.0 - eps), (1.0 + mu + eps, config.scan_h_ceiling)]
        f = lambda h: tau(mu, h, config) - target
        for lo, hi in segments:
            prev_h = prev_v = None
            for h in _scan_iter(lo, hi, config):
                if len(records) >= count:
                    return records
                v = f(h)
                if prev_h is not None and (prev_v * v < 0 or prev_v == 0.0):
                    root = prev_h if prev_v == 0.0 else \
                        _refine(f, prev_h, h, prev_v, v, config.tol_h)
                    emit(root)
                prev_h, prev_v = h, v
            if len(records) >= count:
                return records
        raise SearchExhausted(
            f"found {len(records)} < {count} eigenvalues below "
            f"h = {config.scan_h_ceiling}")

    # q in {0, 1}: bracket the Dirichlet entry M21, pre-filter by tau
    sign = 1.0 if q_num == 0 else -1.0

    def mono(h):
        return lame_monodromy(mu, h, config)

    prev_h = prev_M = None
    for h in _scan_iter(1.0 + mu + eps, config.scan_h_ceiling, config):
        if len(records) >= count:
            return records
        M = mono(h)
        if prev_h is not None and prev_M[1, 0] * M[1, 0] < 0:
            # coexistence points have tau = +-1; a gap Dirichlet point has
            # |tau| > 1 and the wrong sign is filtered here before refining
            t_mid = 0.5 * float(np.trace(mono(0.5 * (prev_h + h))))
            if abs(t_mid - sign) < abs(t_mid + sign):
                g = lambda x: float(mono(x)[1, 0])
                h_root = _refine(g, prev_h, h, prev_M[1, 0], M[1, 0], config.tol_h)
                Mr = mono(h_root)
                t = 0.5 * float(np.trace(Mr))
                if abs(t - sign) <= config.tol_floquet \
                        and abs(Mr[0, 1]) <= math.sqrt(config.tol_floquet):
                    records.append(FloquetRecord(mu, q_num, q_den, len(records),
                                                 h_root, Mr,
                                                 monodromy_order(Mr, config)))
        prev_h, prev_M = h, M
    if len(records) >= count:
        return records
    raise SearchExhausted(
        f"found {len(records)} < {count} eigenvalues below h = {config.scan_h_ceiling}")


# ----------------------------------------------------------------- solutions

def fundamental_ode(mu: float, h: float, s_grid, config: RunConfig = DEFAULT) -> LameSolutionPath:
    """cl, sl and derivatives on the grid by direct adaptive integration."""
    mu = _check_mu(mu)
    s_grid = np.asarray(s_grid, dtype=float)
    if np.any(np.diff(s_grid) <= 0) and len(s_grid) > 1:
        raise ValueError("s_grid must be strictly increasing")

    def run(grid):
        if len(grid) == 0:
            return np.empty((0, 2, 2))
        frames = _lame_solve(mu, h, np.concatenate([[0.0], grid]), np.eye(2), config)
        return frames[1:]

    neg = s_grid[s_grid < 0.0]
    pos = s_grid[s_grid > 0.0]
    zero = np.tile(np.eye(2), (int(np.sum(s_grid == 0.0)), 1, 1))
    frames = np.concatenate([run(neg[::-1])[::-1], zero, run(pos)], axis=0)
    return LameSolutionPath(mu, h, s_grid, frames[:, 0, 0], frames[:, 0, 1],
                            frames[:, 1, 0], frames[:, 1, 1], "ode")


class HeunLameEvaluator:
    """delta(s) from the Heun closed form with monodromy extension."""

    def __init__(self, mu: float, h: float, config: RunConfig = DEFAULT):
        self.mu = _check_mu(mu)
        self.h = h
        self.config = config
        self.K, _ = complete_elliptic(mu)
        p1, p2 = lame_heun_params(mu, h)
        self._hl1 = HeunEvaluator(p1)
        self._hl2 = HeunEvaluator(p2)
        self.Q_plus = self._one_sided_Q()
        self.Q_minus = self._reflect(self.Q_plus)
        self.monodromy = self.Q_plus @ np.linalg.inv(self.Q_minus)
        # edge data for the short Taylor patch at |s -+ K| < edge_width
        self._edge_width = 1e-3 * self.K
        self._C_edge = np.array([[0.0, 2.0 * mu - h], [1.0, 0.0]])

    # -- building blocks on the open base cell ------------------------------

    def _tilde(self, s: float) -> np.ndarray:
        """[[cl~, cl~'], [sl~, sl~']] for s strictly inside (-K, K)."""
        mu = self.mu
        sn, cn, dn = jacobi_sncndn(s, mu)
        z = sn * sn
        zp = 2.0 * sn * cn * dn
        f1, d1 = self._hl1.value_and_derivative(z)
        f2, d2 = self._hl2.value_and_derivative(z)
        root = math.sqrt(1.0 - mu * z)
        rootp = -0.5 * mu * zp / root
        cl = f1 * root
        clp = d1 * zp * root + f1 * rootp
        sl = f2 * root * sn
        slp = d2 * zp * root * sn + f2 * rootp * sn + f2 * root * cn * dn
        return np.array([[cl, clp], [sl, slp]])

    @staticmethod
    def _reflect(Q: np.ndarray) -> np.ndarray:
        """Parity: cl~ even, sl~ odd gives Q- = S Q+ S with S = diag(1,-1)."""
        S = np.diag([1.0, -1.0])
        return S @ Q @ S

    def _one_sided_Q(self) -> np.ndarray:
        """lim_{s -> K^-} of the building-block matrix, by Richardson
        extrapolation along eps_k = eps0 / 2^k (one-sided real analyticity)."""
        cfg = self.config
        eps0 = 0.05 * self.K
        xs, mats = [], []
        for k in range(cfg.limit_levels):
            eps = eps0 / 2.0 ** k
            xs.append(eps)
            mats.append(self._tilde(self.K - eps))
        # Neville tableau on matrices
        t = [m.copy() for m in mats]
        last_diag = t[0]
        n = len(t)
        for j in range(1, n):
            for i in range(n - j):
                t[i] = ((0.0 - xs[i + j]) * t[i] + (xs[i] - 0.0) * t[i + 1]) \
                    / (xs[i] - xs[i + j])
            if j == n - 2:
                last_diag = t[0].copy()
        if np.abs(t[0] - last_diag).max() > cfg.limit_tol:
            raise LimitUnstable(
                f"half-period limit unstable: {np.abs(t[0] - last_diag).max():.2e}")
        return t[0]

    # -- full-line evaluation ------------------------------------------------

    def _base_cell(self, s: float) -> np.ndarray:
        K = self.K
        if abs(s - K) < self._edge_width or abs(s + K) < self._edge_width:
            # second-order Taylor from the cell edge; C'(+-K) = 0
            edge = K if s > 0 else -K
            Q = self.Q_plus if s > 0 else self.Q_minus
            e = s - edge
            C = self._C_edge
            V = np.eye(2) + e * C + 0.5 * e * e * (C @ C)
            return Q @ V
        return self._tilde(s)

    def __call__(self, s: float) -> np.ndarray:
        K = self.K
        p = int(np.floor((s + K) / (2.0 * K)))
        base = s - 2.0 * p * K
        if base > K:
            base, p = base - 2.0 * K, p + 1
        Mp = np.linalg.matrix_power(self.monodromy, p) if p >= 0 \
            else np.linalg.matrix_power(np.linalg.inv(self.monodromy), -p)
        return Mp @ self._base_cell(base)

    def path(self, s_grid) -> LameSolutionPath:
        s_grid = np.asarray(s_grid, dtype=float)
        frames = np.array([self(s) for s in s_grid])
        return LameSolutionPath(self.mu, self.h, s_grid, frames[:, 0, 0],
                                frames[:, 0, 1], frames[:, 1, 0],
                                frames[:, 1, 1], "heun")


def fundamental_heun(mu: float, h: float, s, config: RunConfig = DEFAULT):
    """(cl, sl, cl', sl') at s via the Heun closed form."""
    ev = HeunLameEvaluator(mu, h, config)
    M = ev(float(s))
    return M[0, 0], M[1, 0], M[0, 1], M[1, 1]
