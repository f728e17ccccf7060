import math

import numpy as np
import pytest

from aapdeploy import channel, uplink
from aapdeploy.errors import DegenerateCoverageError
from aapdeploy.params import EnvironmentParams

from conftest import make_system


def test_cell_load_consistency(baseline_system):
    load = uplink.cell_load(50.0, baseline_system)
    assert load.n_ue == pytest.approx(1e-2 * math.pi * 2500.0)
    assert load.per_ue_bandwidth * load.n_ue == pytest.approx(
        baseline_system.bandwidth_w
    )


def test_ue_transmit_power_cap(baseline_system, suburban_env):
    # far UE: controlled power far above the cap
    geom = channel.UeAapGeometry(r=5000.0, h=300.0)
    assert (
        uplink.ue_transmit_power(geom, baseline_system, suburban_env)
        == baseline_system.p_max
    )


def test_ue_transmit_power_unit_path_loss(baseline_system, suburban_env):
    # engineered unit mean path loss via a direct product check
    geom = channel.UeAapGeometry(r=10.0, h=15.0)
    loss = channel.mean_path_loss(geom, suburban_env)
    expected = min(baseline_system.p_max, baseline_system.p_target_pa * loss)
    assert uplink.ue_transmit_power(geom, baseline_system, suburban_env) == pytest.approx(
        expected
    )


def test_ue_transmit_power_direct_substitution(baseline_system, suburban_env):
    geom = channel.UeAapGeometry(r=50.0, h=15.0)
    phi = math.degrees(math.atan2(15.0, 50.0))
    p = 1.0 / (1.0 + 4.88 * math.exp(-0.43 * (phi - 4.88)))
    eta_m = 10**2.1 + p * (10**0.01 - 10**2.1)
    loss = eta_m * (50.0**2 + 15.0**2) / 1.42e-4
    expected = min(1e-3, baseline_system.p_target_pa * loss)
    assert uplink.ue_transmit_power(geom, baseline_system, suburban_env) == pytest.approx(
        expected, rel=1e-12
    )


def test_sum_power_closed_form_scales_with_density(suburban_env, baseline_system):
    sparse = make_system(ue_density_rho=1e-9)
    value = uplink.expected_sum_power_closed_form(15.0, 0.9, sparse, suburban_env)
    dense = uplink.expected_sum_power_closed_form(15.0, 0.9, baseline_system, suburban_env)
    assert value == pytest.approx(dense * 1e-9 / 1e-2, rel=1e-12)


def test_sum_power_closed_form_cot45(suburban_env, baseline_system):
    delta_45 = float(channel.los_probability(45.0, suburban_env))
    eta_m = float(channel.mean_additional_path_loss(45.0, suburban_env))
    h = 20.0
    expected = (
        2.0
        * math.pi
        * baseline_system.ue_density_rho
        * baseline_system.p_target_pa
        * eta_m
        * h**4
        * 3.0
        / (4.0 * suburban_env.g0)
    )
    assert uplink.expected_sum_power_closed_form(
        h, delta_45, baseline_system, suburban_env
    ) == pytest.approx(expected, rel=1e-9)


def test_sum_power_closed_form_increasing_in_h(baseline_system, suburban_env):
    values = [
        uplink.expected_sum_power_closed_form(h, 0.9, baseline_system, suburban_env)
        for h in np.linspace(15, 300, 30)
    ]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_exact_bounded_by_closed_form(baseline_system, suburban_env):
    for h in (15.0, 60.0, 150.0):
        for delta in (0.5, 0.9, 0.99):
            exact = uplink.expected_sum_power_exact(h, delta, baseline_system, suburban_env)
            closed = uplink.expected_sum_power_closed_form(
                h, delta, baseline_system, suburban_env
            )
            assert exact <= closed * (1.0 + 1e-12)
            assert closed - exact > 0.0


def test_exact_equals_closed_form_when_excess_loss_constant(baseline_system):
    env = EnvironmentParams(a=4.88, b=0.43, eta_los=5.0, eta_nlos=5.0, g0=1.42e-4)
    exact = uplink.expected_sum_power_exact(15.0, 0.9, baseline_system, env)
    closed = uplink.expected_sum_power_closed_form(15.0, 0.9, baseline_system, env)
    assert exact == pytest.approx(closed, rel=1e-9)


def test_per_ue_rate_no_interference_limit(suburban_env):
    sysp = make_system(num_interferers_m=0)
    r_a = channel.coverage_radius(15.0, 0.9, suburban_env)
    n_ue = uplink.cell_ue_count(r_a, sysp)
    snr = sysp.p_target_pa * n_ue / (sysp.noise_psd_sigma0sq * sysp.bandwidth_w)
    expected = (sysp.bandwidth_w / n_ue) * math.log2(1.0 + snr)
    assert uplink.per_ue_rate(15.0, 0.9, sysp, suburban_env) == pytest.approx(
        expected, rel=1e-12
    )


def test_per_ue_rate_interference_limited(suburban_env):
    # huge density: SINR -> 1/M
    sysp = make_system(ue_density_rho=1e3)
    r_a = channel.coverage_radius(15.0, 0.9, suburban_env)
    n_ue = uplink.cell_ue_count(r_a, sysp)
    expected = (sysp.bandwidth_w / n_ue) * math.log2(7.0 / 6.0)
    assert uplink.per_ue_rate(15.0, 0.9, sysp, suburban_env) == pytest.approx(
        expected, rel=1e-6
    )


def test_rate_equalization_reduction(baseline_system, suburban_env):
    """The general SINR form with power-controlled arrived powers reduces to
    the r-independent rate expression for any covered UE."""
    h, delta = 15.0, 0.9
    r_a = channel.coverage_radius(h, delta, suburban_env)
    n_ue = uplink.cell_ue_count(r_a, baseline_system)
    noise = baseline_system.noise_psd_sigma0sq * baseline_system.bandwidth_w
    for r in (0.0, 0.3 * r_a, r_a):
        loss = float(channel.mean_path_loss_rh(r, h, suburban_env))
        arrived = baseline_system.p_target_pa * loss / loss  # P̄_i / L̄
        interference = baseline_system.num_interferers_m * baseline_system.p_target_pa
        general = (baseline_system.bandwidth_w / n_ue) * math.log2(
            1.0 + arrived / (interference + noise / n_ue)
        )
        assert general == pytest.approx(
            uplink.per_ue_rate(h, delta, baseline_system, suburban_env), rel=1e-12
        )


def test_sum_rate_equals_count_times_per_ue(baseline_system, suburban_env):
    h, delta = 15.0, 0.9
    r_a = channel.coverage_radius(h, delta, suburban_env)
    n_ue = uplink.cell_ue_count(r_a, baseline_system)
    assert uplink.sum_rate(h, delta, baseline_system, suburban_env) == pytest.approx(
        n_ue * uplink.per_ue_rate(h, delta, baseline_system, suburban_env), rel=1e-12
    )


def test_sum_rate_saturation(baseline_system, suburban_env):
    limit = uplink.sum_rate_saturation(baseline_system)
    assert limit == pytest.approx(20e6 * math.log2(1 + 1 / 6))
    values = [
        uplink.sum_rate(h, 0.9, baseline_system, suburban_env)
        for h in np.linspace(15, 300, 30)
    ]
    gaps = [limit - v for v in values]
    assert all(g > 0 for g in gaps)
    assert all(b <= a * (1 + 1e-12) for a, b in zip(gaps, gaps[1:]))


def test_sum_rate_unbounded_without_interference_or_noise(suburban_env):
    sysp = make_system(num_interferers_m=0)
    small = uplink.sum_rate(15.0, 0.9, sysp, suburban_env)
    large = uplink.sum_rate(150.0, 0.9, sysp, suburban_env)
    assert large > small


def test_h_max_power_constraint_nadir_form(baseline_system, suburban_env):
    # phi = 90 deg: cot term vanishes
    delta_90 = float(channel.los_probability(90.0, suburban_env))
    eta_m = float(channel.mean_additional_path_loss(90.0, suburban_env))
    expected = math.sqrt(
        baseline_system.p_max
        * suburban_env.g0
        / (baseline_system.p_target_pa * eta_m)
    )
    # delta_90 rounds to an elevation slightly below 90 deg, so the cot term
    # is ~1e-5 rather than exactly zero
    assert uplink.h_max_power_constraint(
        delta_90, baseline_system, suburban_env
    ) == pytest.approx(expected, rel=1e-4)


def test_h_max_power_constraint_engineered_unit(suburban_env):
    delta = 0.9
    phi = channel.phi_from_delta(delta, suburban_env)
    cot2 = 1.0 / math.tan(math.radians(phi)) ** 2
    eta_m = float(channel.mean_additional_path_loss(phi, suburban_env))
    sysp = make_system()
    # choose P_a so that h'_max is exactly 1 m
    p_a = sysp.p_max * suburban_env.g0 / (eta_m * (1.0 + cot2))
    engineered = make_system(
        gamma=p_a / (sysp.noise_psd_sigma0sq * sysp.bandwidth_w)
    )
    assert uplink.h_max_power_constraint(
        delta, engineered, suburban_env
    ) == pytest.approx(1.0, rel=1e-12)


def test_edge_power_round_trip(baseline_system, suburban_env):
    delta = 0.9
    h_lim = uplink.h_max_power_constraint(delta, baseline_system, suburban_env)
    r_a = channel.coverage_radius(h_lim, delta, suburban_env)
    loss = channel.mean_path_loss(channel.UeAapGeometry(r_a, h_lim), suburban_env)
    assert baseline_system.p_target_pa * loss == pytest.approx(
        baseline_system.p_max, rel=1e-9
    )


def test_degenerate_coverage_raises(baseline_system):
    # gentle S-curve whose zenith LoS probability is representable, so the
    # threshold maps back to (numerically) 90 degrees exactly
    env = EnvironmentParams(a=4.88, b=0.05, eta_los=1.1, eta_nlos=100.0, g0=1.42e-4)
    delta_90 = float(channel.los_probability(90.0, env))
    assert channel.coverage_radius(15.0, delta_90, env) == 0.0
    with pytest.raises(DegenerateCoverageError):
        uplink.per_ue_rate(15.0, delta_90, baseline_system, env)
