"""Orbit-type classification of curves with periodic bending.

Over one bending period rho the frames transport by the monodromies
M+- = F+-(s0 + rho) F+-(s0)^{-1}.  The conjugation invariant

    I = (tr M)^2 - 4

separates the three orbit types: elliptic (I < 0, eigenvalues e^{+-i theta}),
hyperbolic (I > 0, real reciprocal eigenvalues), parabolic (I = 0 with
M != +-Id); M = +-Id is fixed by conjugation ("central").

For elliptic factors the phase theta = arccos(tr M / 2) in [0, pi] is
rationalized by continued-fraction convergents (denominator-capped); the
curve closes iff both phases are rational multiples of pi.  Writing
theta/pi = m/n reduced, the factor reaches +-Id first at n periods with sign
(-1)^m; with L = lcm(n+, n-) and the two signs eps+- = (-1)^{(L/n+-) m+-}:

    eps+ = eps- = +1:  curve period L rho, spin 1
    eps+ = eps- = -1:  curve period L rho, spin 1/2 (frames need 2 L rho)
    eps+ != eps-:      curve period 2 L rho, spin 1

Both exponent normalizations (theta/pi and theta/2 pi) are reported, since
either convention appears in practice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Tuple

import numpy as np

from ..config import DEFAULT, RunConfig
from .frames import SpinorFramePath

OrbitType = Literal["Elliptic", "Hyperbolic", "Parabolic", "CentralFixed"]


class NotPeriodicBending(ValueError):
    pass


@dataclass
class FactorClassification:
    monodromy: np.ndarray
    invariant: float                 # (tr M)^2 - 4
    orbit_type: OrbitType
    phase: Optional[float]          # theta in [0, pi] when elliptic/central
    q_pi: Optional[Fraction]        # theta/pi rationalized (None if not found)
    q_2pi: Optional[Fraction]       # theta/(2 pi) rationalized

    @property
    def trace_half(self) -> float:
        return 0.5 * float(np.trace(self.monodromy))


@dataclass
class OrbitClassification:
    plus: FactorClassification
    minus: FactorClassification
    closed: bool
    least_period: Optional[float]
    spin: Optional[Fraction]

    @property
    def type_pair(self) -> str:
        short = {"Elliptic": "E", "Hyperbolic": "H", "Parabolic": "P",
                 "CentralFixed": "C"}
        return f"({short[self.plus.orbit_type]},{short[self.minus.orbit_type]})"

    @property
    def invariants(self) -> Tuple[float, float]:
        return self.plus.invariant, self.minus.invariant


def rationalize(x: float, cap: int, tol: float) -> Optional[Fraction]:
    """Best continued-fraction convergent p/q of x with q <= cap and
    |x - p/q| <= tol, else None."""
    frac = Fraction(x).limit_denominator(cap)
    if abs(x - float(frac)) <= tol:
        return frac
    return None


def _classify_factor(M: np.ndarray, config: RunConfig) -> FactorClassification:
    tr = float(np.trace(M))
    inv = tr * tr - 4.0
    if np.abs(M - np.eye(2)).max() <= config.tol_central:
        return FactorClassification(M, inv, "CentralFixed", 0.0,
                                    Fraction(0, 1), Fraction(0, 1))
    if np.abs(M + np.eye(2)).max() <= config.tol_central:
        return FactorClassification(M, inv, "CentralFixed", math.pi,
                                    Fraction(1, 1), Fraction(1, 2))
    if inv < -config.orbit_type_tol:
        theta = math.acos(max(-1.0, min(1.0, 0.5 * tr)))
        q1 = rationalize(theta / math.pi, config.rationalize_cap,
                         config.rationalize_tol)
        q2 = rationalize(theta / (2.0 * math.pi), 2 * config.rationalize_cap,
                         config.rationalize_tol)
        return FactorClassification(M, inv, "Elliptic", theta, q1, q2)
    if inv > config.orbit_type_tol:
        return FactorClassification(M, inv, "Hyperbolic", None, None, None)
    return FactorClassification(M, inv, "Parabolic", None, None, None)


def classify_orbit(path: SpinorFramePath, rho: float,
                   config: RunConfig = DEFAULT) -> OrbitClassification:
    """Classification from a frame path whose grid contains s0 and s0 + rho."""
    s = path.s_grid
    i0 = 0
    i1 = int(np.argmin(np.abs(s - (s[0] + rho))))
    if abs(s[i1] - (s[0] + rho)) > 1e-9 * max(1.0, abs(rho)):
        raise ValueError("s_grid must contain s0 + rho (within 1e-9)")
    if abs(path.kappa[i1] - path.kappa[i0]) > 1e-6 * max(1.0, abs(path.kappa[i0])):
        raise NotPeriodicBending(
            f"kappa(s0 + rho) - kappa(s0) = {path.kappa[i1] - path.kappa[i0]:.3e}")
    Mp = path.Fplus[i1] @ np.linalg.inv(path.Fplus[i0])
    Mm = path.Fminus[i1] @ np.linalg.inv(path.Fminus[i0])
    return classify_monodromies(Mp, Mm, rho, config)


def classify_constant_closed(m: int, n: int, config: RunConfig = DEFAULT):
    """(classification, rho) for the closed constant-bending curve indexed by
    coprime m > n.

    Constant bending has no least period, so the reference window rho is a
    free choice; taking rho = P/w with P the closed-form curve period and w
    the smallest integer >= 3 coprime to 2 m n makes both monodromies
    elliptic and non-central, and the rational-phase algebra reproduces the
    closed-form period and spin.
    """
    from .frames import closed_constant, constant_bending_frames, constant_curve_period

    kappa, _, _ = closed_constant(m, n)
    P = constant_curve_period(m, n)
    w = 3
    while math.gcd(w, 2 * m * n) != 1:
        w += 1
    rho = P / w
    Fp, Fm = constant_bending_frames(float(kappa), rho)
    return classify_monodromies(Fp, Fm, rho, config), rho


def classify_monodromies(Mp: np.ndarray, Mm: np.ndarray, rho: float,
                         config: RunConfig = DEFAULT) -> OrbitClassification:
    plus = _classify_factor(Mp, config)
    minus = _classify_factor(Mm, config)
    closed = (plus.orbit_type in ("Elliptic", "CentralFixed")
              and minus.orbit_type in ("Elliptic", "CentralFixed")
              and plus.q_pi is not None and minus.q_pi is not None)
    least_period = None
    spin = None
    if closed:
        np_, nm = plus.q_pi.denominator, minus.q_pi.denominator
        mp_, mm = plus.q_pi.numerator, minus.q_pi.numerator
        L = np_ * nm // math.gcd(np_, nm)
        eps_p = -1 if ((L // np_) * mp_) % 2 else 1
        eps_m = -1 if ((L // nm) * mm) % 2 else 1
        if eps_p == eps_m:
            least_period = L * rho
            spin = Fraction(1) if eps_p == 1 else Fraction(1, 2)
        else:
            least_period = 2 * L * rho
            spin = Fraction(1)
    return OrbitClassification(plus, minus, closed, least_period, spin)
