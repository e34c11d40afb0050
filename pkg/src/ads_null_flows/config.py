"""Run-wide numeric configuration.

Every tolerance that a numeric routine consults lives here, so call sites
never hard-code one.  The CLI builds a RunConfig from an optional key=value
file plus flag overrides; the library default() is used everywhere else.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class RunConfig:
    # adaptive integrator (embedded high-order Runge-Kutta)
    integrator_rel_tol: float = 1e-12
    integrator_abs_tol: float = 1e-14

    # Floquet eigenvalue search
    scan_h_ceiling: float = 500.0
    scan_step_fine: float = 0.01     # below scan_step_switch
    scan_step_coarse: float = 0.5    # above
    scan_step_switch: float = 5.0
    tol_h: float = 1e-10             # bisection tolerance on eigenvalues
    tol_floquet: float = 1e-8        # |tau - cos(q pi)| acceptance
    band_edge_margin: float = 1e-6   # offset from mu, 1, 1+mu when scanning

    # monodromy order measurement and orbit classification
    order_max: int = 10_000
    order_tol: float = 1e-6
    tol_central: float = 1e-8        # ||M -+ Id|| for the central fixed points
    orbit_type_tol: float = 1e-9     # |I| threshold for the parabolic tag
    rationalize_cap: int = 64        # continued-fraction denominator cap
    rationalize_tol: float = 1e-6

    # geometry tolerances
    tol_metric: float = 1e-8
    tol_det: float = 1e-9
    tol_wronskian: float = 1e-9
    kdv_residual_gate: float = 1e-3  # lien_evolve input gate

    # limits at the half-period (Heun building blocks)
    limit_levels: int = 6
    limit_tol: float = 1e-6

    # grids and output
    min_points_per_period: int = 8
    output_digits: int = 17

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, (int, float)) and not isinstance(v, bool) and v <= 0:
                raise ValueError(f"config field {f.name} must be positive, got {v}")
        if self.min_points_per_period < 8:
            raise ValueError("grid density must be at least 8 points per period")

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **kw)

    def digest(self) -> str:
        body = ";".join(f"{f.name}={getattr(self, f.name)!r}" for f in fields(self))
        return hashlib.sha256(body.encode()).hexdigest()[:16]


DEFAULT = RunConfig()


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """key=value file (one per line, # comments) plus explicit overrides."""
    kw = {}
    if path:
        valid = {f.name: f.type for f in fields(RunConfig)}
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, val = line.partition("=")
                key = key.strip()
                if key not in valid:
                    raise KeyError(f"unknown config key {key!r}")
                cur = getattr(DEFAULT, key)
                kw[key] = type(cur)(val.strip())
    if overrides:
        kw.update(overrides)
    return RunConfig(**kw)
