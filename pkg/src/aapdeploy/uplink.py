"""Uplink power control, expected sum transmit power and data rates.

The closed-form sum power evaluates the mean excess loss at the cell-edge
elevation (the edge-UE approximation); the exact variant integrates the
r-dependent mean path loss numerically and is always <= the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from . import channel
from .errors import DegenerateCoverageError, QuadratureError
from .params import EnvironmentParams, SystemParams

QUAD_REL_TOL = 1e-10

LOG2_E = math.log2(math.e)


@dataclass(frozen=True)
class CellLoad:
    """Expected UE count in one cell and the per-UE bandwidth share."""

    n_ue: float
    per_ue_bandwidth: float


def cell_ue_count(r_a: float, sys: SystemParams) -> float:
    """Expected number of UEs in a cell of radius r_a (real-valued)."""
    return sys.ue_density_rho * math.pi * r_a**2


def cell_load(r_a: float, sys: SystemParams) -> CellLoad:
    n_ue = cell_ue_count(r_a, sys)
    if n_ue <= 0:
        raise DegenerateCoverageError("cell contains no UEs in expectation")
    return CellLoad(n_ue=n_ue, per_ue_bandwidth=sys.bandwidth_w / n_ue)


def ue_transmit_power(
    geom: channel.UeAapGeometry, sys: SystemParams, env: EnvironmentParams
) -> float:
    """Power-controlled UE transmit power min{P_max, P_a B L̄^beta} (W)."""
    controlled = sys.p_target_pa * sys.resource_blocks_b * (
        channel.mean_path_loss(geom, env) ** sys.tpc_beta
    )
    return min(sys.p_max, controlled)


def edge_mean_additional_loss(delta: float, env: EnvironmentParams) -> float:
    """Mean excess path loss evaluated at the cell-edge elevation phi(delta)."""
    return float(channel.mean_additional_path_loss(channel.phi_from_delta(delta, env), env))


def expected_sum_power_closed_form(
    h: float, delta: float, sys: SystemParams, env: EnvironmentParams
) -> float:
    """Closed-form upper bound on the expected sum UE transmit power (W).

    2 pi rho P_a eta_m cot^2(phi) h^4 (cot^2(phi) + 2) / (4 g0), with eta_m
    frozen at the edge elevation.  Strictly increasing in h.
    """
    channel.require_coverage(h, delta, env)
    phi = channel.phi_from_delta(delta, env)
    cot2 = 1.0 / math.tan(math.radians(phi)) ** 2
    eta_m = edge_mean_additional_loss(delta, env)
    return (
        2.0
        * math.pi
        * sys.ue_density_rho
        * sys.p_target_pa
        * eta_m
        * cot2
        * h**4
        * (cot2 + 2.0)
        / (4.0 * env.g0)
    )


def _sum_power_quadrature(
    h: float,
    r_a: float,
    sys: SystemParams,
    env: EnvironmentParams,
    integrand,
    rel_tol: float,
) -> float:
    value, abserr = quad(integrand, 0.0, r_a, epsabs=0.0, epsrel=rel_tol, limit=200)
    if value != 0.0 and abserr > 10.0 * rel_tol * abs(value):
        raise QuadratureError(
            f"sum-power quadrature achieved only {abserr / abs(value):.2e} relative"
        )
    return value


def expected_sum_power_exact(
    h: float,
    delta: float,
    sys: SystemParams,
    env: EnvironmentParams,
    rel_tol: float = QUAD_REL_TOL,
) -> float:
    """Expected sum UE transmit power (W) with the r-dependent excess loss.

    Numerical quadrature of rho * 2 pi P_a L̄(r, h) r over the cell; always
    <= the closed-form bound, with equality when eta_los == eta_nlos.
    """
    r_a = channel.require_coverage(h, delta, env)

    def integrand(r: float) -> float:
        return (
            sys.ue_density_rho
            * 2.0
            * math.pi
            * sys.p_target_pa
            * float(channel.mean_path_loss_rh(r, h, env))
            * r
        )

    return _sum_power_quadrature(h, r_a, sys, env, integrand, rel_tol)


def expected_sum_power_edge_quadrature(
    h: float,
    delta: float,
    sys: SystemParams,
    env: EnvironmentParams,
    rel_tol: float = QUAD_REL_TOL,
) -> float:
    """Quadrature of the sum-power integrand with the edge-frozen excess loss.

    Independent cross-check of the closed form: same integrand family but a
    constant eta_m, so the two must agree to quadrature tolerance.
    """
    r_a = channel.require_coverage(h, delta, env)
    eta_m = edge_mean_additional_loss(delta, env)

    def integrand(r: float) -> float:
        return (
            sys.ue_density_rho
            * 2.0
            * math.pi
            * sys.p_target_pa
            * eta_m
            * (r**2 + h**2)
            / env.g0
            * r
        )

    return _sum_power_quadrature(h, r_a, sys, env, integrand, rel_tol)


def sinr(n_ue: float, sys: SystemParams) -> float:
    """Uplink SINR under worst-case co-channel interference."""
    signal = sys.p_target_pa * n_ue
    return signal / (
        sys.num_interferers_m * signal
        + sys.noise_psd_sigma0sq * sys.bandwidth_w
    )


def per_ue_rate(
    h: float, delta: float, sys: SystemParams, env: EnvironmentParams
) -> float:
    """Per-UE uplink data rate (bit/s); equal for every covered UE."""
    r_a = channel.require_coverage(h, delta, env)
    load = cell_load(r_a, sys)
    return load.per_ue_bandwidth * math.log2(1.0 + sinr(load.n_ue, sys))


def sum_rate_from_count(n_ue: float, sys: SystemParams) -> float:
    """Cell sum rate W log2(1 + SINR) for an expected UE count."""
    return sys.bandwidth_w * math.log2(1.0 + sinr(n_ue, sys))


def sum_rate(
    h: float, delta: float, sys: SystemParams, env: EnvironmentParams
) -> float:
    """Cell sum uplink rate (bit/s); saturates at W log2(1 + 1/M)."""
    r_a = channel.require_coverage(h, delta, env)
    return sum_rate_from_count(cell_ue_count(r_a, sys), sys)


def sum_rate_saturation(sys: SystemParams) -> float:
    """Large-cell limit of the sum rate, W log2(1 + 1/M)."""
    if sys.num_interferers_m == 0:
        return math.inf
    return sys.bandwidth_w * math.log2(1.0 + 1.0 / sys.num_interferers_m)


def h_max_power_constraint(
    delta: float, sys: SystemParams, env: EnvironmentParams
) -> float:
    """Altitude above which the cell-edge UE would exceed its power cap.

    sqrt(P_max g0 / (P_a eta_m (1 + cot^2(phi(delta))))); at this altitude
    the edge UE's power-controlled transmit power equals P_max exactly.
    """
    phi = channel.phi_from_delta(delta, env)
    cot2 = 0.0 if phi >= 90.0 - 1e-9 else 1.0 / math.tan(math.radians(phi)) ** 2
    eta_m = edge_mean_additional_loss(delta, env)
    return math.sqrt(
        sys.p_max * env.g0 / (sys.p_target_pa * eta_m * (1.0 + cot2))
    )
