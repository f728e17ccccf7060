"""Air-to-ground channel: path loss, LoS probability and coverage radius.

The LoS-probability S-curve takes the elevation angle in degrees; everything
else works in radians/metres.  The degree conversion happens in exactly one
place (``elevation_deg``) to keep the classic unit bug out.

All functions accept numpy arrays for the geometric arguments and broadcast,
which the Monte-Carlo oracle relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCoverageError
from .params import EnvironmentParams


@dataclass(frozen=True)
class UeAapGeometry:
    """Horizontal UE distance r (m) and AAP altitude h (m) for one link."""

    r: float
    h: float

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError("horizontal distance r must be non-negative")
        if self.h <= 0:
            raise ValueError("altitude h must be strictly positive")

    @property
    def distance(self) -> float:
        """Slant UE-AAP distance sqrt(r^2 + h^2)."""
        return math.hypot(self.r, self.h)

    @property
    def elevation_deg(self) -> float:
        """Elevation angle in degrees; 90 exactly for the nadir UE (r=0)."""
        return elevation_deg(self.r, self.h)


def elevation_deg(r, h):
    """Elevation angle (degrees) of the AAP as seen from a ground UE."""
    return np.degrees(np.arctan2(h, r))


def path_loss(geom: UeAapGeometry, eta: float, env: EnvironmentParams) -> float:
    """Path loss eta * d^2 / g0 for a fixed excess-loss ratio eta."""
    if eta <= 0:
        raise ValueError("excess loss eta must be strictly positive")
    return eta * (geom.r**2 + geom.h**2) / env.g0


def _check_phi(phi_deg) -> None:
    if np.any(phi_deg <= 0) or np.any(phi_deg > 90):
        raise ValueError("elevation angle must lie in (0, 90] degrees")


def los_probability(phi_deg, env: EnvironmentParams):
    """LoS probability at elevation angle phi (degrees): the S-curve model."""
    _check_phi(phi_deg)
    return 1.0 / (1.0 + env.a * np.exp(-env.b * (np.asarray(phi_deg, dtype=float) - env.a)))


def delta_lower_bound(env: EnvironmentParams) -> float:
    """Infimum of LoS probabilities reachable at positive elevation."""
    return 1.0 / (1.0 + env.a * math.exp(env.a * env.b))


def phi_from_delta(delta: float, env: EnvironmentParams) -> float:
    """Elevation angle (degrees) at which the LoS probability equals delta.

    Closed-form inversion of the S-curve; rejects thresholds outside the
    curve's image over (0, 90] degrees.
    """
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must lie strictly between 0 and 1")
    if delta <= delta_lower_bound(env):
        raise ValueError(
            f"delta={delta:g} at or below the minimum reachable LoS probability "
            f"{delta_lower_bound(env):g}"
        )
    phi = env.a - math.log((1.0 - delta) / (env.a * delta)) / env.b
    if 90.0 < phi <= 90.0 + 1e-6:
        phi = 90.0  # rounding overshoot at the top of the S-curve
    if not (0.0 < phi <= 90.0):
        raise ValueError(
            f"delta={delta:g} maps to elevation {phi:g} deg outside (0, 90]"
        )
    return phi


def mean_additional_path_loss(phi_deg, env: EnvironmentParams):
    """LoS-probability-weighted mean excess path loss at elevation phi."""
    p_los = los_probability(phi_deg, env)
    return env.eta_nlos + p_los * (env.eta_los - env.eta_nlos)


def mean_path_loss_rh(r, h, env: EnvironmentParams):
    """Probabilistic mean path loss for horizontal distance r and altitude h.

    Array-friendly core used by both the scalar API and the Monte-Carlo
    oracle; uses each UE's own elevation angle (no edge approximation).
    """
    eta_m = mean_additional_path_loss(elevation_deg(r, h), env)
    return eta_m * (np.asarray(r, dtype=float) ** 2 + h**2) / env.g0


def mean_path_loss(geom: UeAapGeometry, env: EnvironmentParams) -> float:
    """Probabilistic mean path loss for one UE-AAP link."""
    return float(mean_path_loss_rh(geom.r, geom.h, env))


def coverage_radius(h: float, delta: float, env: EnvironmentParams) -> float:
    """Coverage radius h * cot(phi(delta)); 0.0 when the cell degenerates.

    A zero return marks the nadir-only (degenerate) cell; callers that cannot
    proceed with an empty cell raise DegenerateCoverageError.
    """
    if h <= 0:
        raise ValueError("altitude h must be strictly positive")
    phi = phi_from_delta(delta, env)
    if phi >= 90.0 - 1e-9:  # numerically nadir-only
        return 0.0
    return h / math.tan(math.radians(phi))


def require_coverage(h: float, delta: float, env: EnvironmentParams) -> float:
    """Coverage radius, raising DegenerateCoverageError when it is zero."""
    r_a = coverage_radius(h, delta, env)
    if r_a <= 0.0:
        raise DegenerateCoverageError(
            f"coverage region degenerate at h={h:g} m, delta={delta:g}"
        )
    return r_a
