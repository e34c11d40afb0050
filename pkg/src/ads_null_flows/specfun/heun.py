"""Local Heun function on the real interval [0, 1].

The equation, with e = alpha + beta - gamma - delta + 1,

    f'' + (gamma/z + delta/(z-1) + e/(z-a)) f'
        + (alpha beta z - q) / (z (z-1) (z-a)) f = 0,

has regular singular points 0, 1, a, inf.  heun_local evaluates the solution
normalized by f(0) = 1, f analytic at 0, by the Frobenius series

    a (n+1)(n+gamma) c_{n+1}
        = ( n [ (n-1+gamma)(1+a) + a delta + e ] + q ) c_n
          - (n-1+alpha)(n-1+beta) c_{n-1},        c_{-1} = 0, c_0 = 1,

followed by Taylor re-centering along [0, z]: each hop is capped at
rad_factor times the distance to the nearest singularity, which keeps every
series geometrically convergent.  The value at z = 1 (where the solution is
continuous but generically not differentiable, the exponents there being
{0, 1 - delta}) is defined as the limit from below, extrapolated in
sqrt(1 - z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class HeunDomainError(ValueError):
    pass


class HeunConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class HeunParams:
    a: float
    q: float
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if self.a <= 1.0:
            raise HeunDomainError(f"singularity parameter a must exceed 1, got {self.a}")
        g = self.gamma
        if g <= 0.0 and abs(g - round(g)) < 1e-12:
            raise HeunDomainError(f"gamma = {g} is a non-positive integer")

    @property
    def epsilon(self) -> float:
        return self.alpha + self.beta - self.gamma - self.delta + 1.0


def lame_heun_params(mu: float, h: float):
    """The two parameter sets whose local solutions build the periodic
    solutions of the first-order Lame equation:

        Hl1: a = 1/mu, q = (mu - h)/(4 mu),     alpha = 0,   beta = 3/2,
             gamma = 1/2, delta = 1/2
        Hl2: a = 1/mu, q = (1 - h + 4 mu)/(4 mu), alpha = 1/2, beta = 2,
             gamma = 3/2, delta = 1/2
    """
    if not 0.0 < mu < 1.0:
        raise HeunDomainError(f"mu must be in (0,1), got {mu}")
    a = 1.0 / mu
    p1 = HeunParams(a, (mu - h) / (4.0 * mu), 0.0, 1.5, 0.5, 0.5)
    p2 = HeunParams(a, (1.0 - h + 4.0 * mu) / (4.0 * mu), 0.5, 2.0, 1.5, 0.5)
    return p1, p2


_SERIES_TOL = 1e-16
# panels are used within RAD_FACTOR of their convergence radius, so the
# scaled Taylor tail decays like RAD_FACTOR^k: 80 terms reach ~1e-32
_MAX_TERMS = 80
_RAD_FACTOR = 0.4


def _frobenius_coeffs(p: HeunParams, n_terms: int) -> np.ndarray:
    a, q = p.a, p.q
    al, be, ga, de, ep = p.alpha, p.beta, p.gamma, p.delta, p.epsilon
    c = np.zeros(n_terms)
    c[0] = 1.0
    if n_terms > 1:
        c[1] = q / (a * ga)
    for n in range(1, n_terms - 1):
        Q = n * ((n - 1 + ga) * (1 + a) + a * de + ep) + q
        P = (n - 1 + al) * (n - 1 + be)
        c[n + 1] = (Q * c[n] - P * c[n - 1]) / (a * (n + 1) * (n + ga))
    return c


def _taylor_step(p: HeunParams, z0: float, scale: float, f0: float, f1: float,
                 n_terms: int) -> np.ndarray:
    """Scaled Taylor coefficients of the solution about the ordinary point z0.

    Returns c~_k with f(z0 + scale*x) = sum c~_k x^k, from initial data
    (f(z0), df/dz(z0)).  Scaling by the local radius keeps the coefficients
    bounded however close z0 is to a singularity.

    The equation in polynomial form is A f'' + B f' + C f = 0 with
        A = z (z-1) (z-a)              (cubic)
        B = gamma (z-1)(z-a) + delta z (z-a) + eps z (z-1)   (quadratic)
        C = alpha beta z - q           (linear)
    shifted to w = z - z0; the recurrence below carries A_j scale^j,
    B_j scale^{j+1}, C_j scale^{j+2}.
    """
    a = p.a
    ga, de, ep = p.gamma, p.delta, p.epsilon
    albe = p.alpha * p.beta

    A = [z0 ** 3 - (1 + a) * z0 ** 2 + a * z0,
         3 * z0 ** 2 - 2 * (1 + a) * z0 + a,
         3 * z0 - (1 + a),
         1.0]
    b2 = ga + de + ep
    b1 = -(ga * (1 + a) + de * a + ep)
    B = [b2 * z0 ** 2 + b1 * z0 + ga * a,
         2 * b2 * z0 + b1,
         b2]
    C = [albe * z0 - p.q, albe]
    As = [A[j] * scale ** j for j in range(4)]
    Bs = [B[j] * scale ** (j + 1) for j in range(3)]
    Cs = [C[j] * scale ** (j + 2) for j in range(2)]

    d = np.zeros(n_terms)
    d[0], d[1] = f0, f1 * scale
    for n in range(n_terms - 2):
        s = 0.0
        for j in (1, 2, 3):
            k = n + 2 - j
            if k >= 2:
                s += As[j] * k * (k - 1) * d[k]
        for j in (0, 1, 2):
            k = n + 1 - j
            if k >= 1:
                s += Bs[j] * k * d[k]
        for j in (0, 1):
            k = n - j
            if k >= 0:
                s += Cs[j] * d[k]
        d[n + 2] = -s / (As[0] * (n + 2) * (n + 1))
    return d


def _eval_series(coeffs: np.ndarray, w: float):
    """(value, derivative) of sum c_k w^k."""
    v = 0.0
    dv = 0.0
    for k in range(len(coeffs) - 1, 0, -1):
        v = v * w + coeffs[k]
        dv = dv * w + k * coeffs[k]
    v = v * w + coeffs[0]
    return v, dv


def _nearest_singularity(p: HeunParams, z: float) -> float:
    return min(abs(z), abs(z - 1.0), abs(z - p.a))


class HeunEvaluator:
    """Evaluates the normalized local solution and its derivative on [0, 1).

    A list of (center, radius scale, scaled Taylor coefficients) panels is
    grown lazily along the real segment toward 1; each panel is used inside
    rad_factor times its convergence radius.
    """

    def __init__(self, params: HeunParams, series_tol: float = _SERIES_TOL,
                 max_terms: int = _MAX_TERMS, rad_factor: float = _RAD_FACTOR):
        self.params = params
        self.series_tol = series_tol
        self.max_terms = max_terms
        self.rad_factor = rad_factor
        c0 = _frobenius_coeffs(params, max_terms)
        self._panels = [(0.0, min(1.0, params.a), c0)]

    def _panel_radius(self, z0: float) -> float:
        full = _nearest_singularity(self.params, z0) if z0 > 0 \
            else min(1.0, self.params.a)
        return self.rad_factor * full

    def _extend_to(self, z: float):
        z0, scale, coeffs = self._panels[-1]
        while z - z0 > self._panel_radius(z0):
            z1 = z0 + self._panel_radius(z0)
            f0, f1 = _eval_series(coeffs, (z1 - z0) / scale)
            f1 /= scale
            if not (math.isfinite(f0) and math.isfinite(f1)):
                raise HeunConvergenceError(f"series blow-up recentering at z={z1}")
            scale = _nearest_singularity(self.params, z1)
            coeffs = _taylor_step(self.params, z1, scale, f0, f1, self.max_terms)
            self._panels.append((z1, scale, coeffs))
            z0 = z1
            if len(self._panels) > 400:
                raise HeunConvergenceError("continuation exceeded panel budget")

    def value_and_derivative(self, z: float):
        if z > 1.0:
            raise HeunDomainError(f"evaluation restricted to z <= 1, got {z}")
        if z == 1.0:
            return self.value_at_one(), math.nan
        if z < 0.0:
            raise HeunDomainError(f"evaluation restricted to z >= 0, got {z}")
        self._extend_to(z)
        # the furthest panel whose center does not overshoot z (scan without
        # assuming list order, so concurrent lazy growth stays harmless)
        z0, scale, coeffs = self._panels[0]
        for cand in self._panels[1:]:
            if cand[0] - 1e-15 <= z and cand[0] > z0:
                z0, scale, coeffs = cand
        v, dv = _eval_series(coeffs, (z - z0) / scale)
        return v, dv / scale

    def __call__(self, z: float) -> float:
        return self.value_and_derivative(z)[0]

    def value_at_one(self, levels: int = 7) -> float:
        """Limit from below at z = 1, extrapolated in x = sqrt(1-z):
        f(1 - x^2) = f(1) + c1 x + c2 x^2 + ...  (exponents {0, 1-delta})."""
        eps0 = 2.0 ** -6
        xs, vs = [], []
        for k in range(levels):
            eps = eps0 * 2.0 ** -k
            xs.append(math.sqrt(eps))
            vs.append(self.value_and_derivative(1.0 - eps)[0])
        return float(_neville(xs, vs, 0.0))


def _neville(xs, ys, x):
    n = len(xs)
    t = list(ys)
    for j in range(1, n):
        for i in range(n - j):
            t[i] = ((x - xs[i + j]) * t[i] + (xs[i] - x) * t[i + 1]) / (xs[i] - xs[i + j])
    return t[0]


def heun_local(p: HeunParams, z: float) -> float:
    """One-shot evaluation of the normalized local solution at z in [0, 1]."""
    return HeunEvaluator(p)(z)


def heun_pair(mu: float, h: float, z: float):
    """(Hl1(mu,h;z), Hl2(mu,h;z)): the two local solutions entering the
    periodic Lame fundamental system."""
    p1, p2 = lame_heun_params(mu, h)
    return heun_local(p1, z), heun_local(p2, z)
