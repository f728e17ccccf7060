import pytest

from aapdeploy.errors import ConfigError
from aapdeploy.scenario import builtin_scenario_path, load_scenario

BASE = """
[environment]
a = 4.88
b = 0.43
eta_los_db = 0.1
eta_nlos_db = 21
g0 = 1.42e-4

[system]
bandwidth_hz = 20e6
num_interferers = 6
circuit_power_w = 5
service_time_s = 500
p_max_w = 1e-3
gamma = 100
noise_psd_w_per_hz = 4e-21
ue_density_per_m2 = 1e-2
h_min_m = 15
h_max_m = 300
area_radius_m = 180.48

[uav]
alpha_climb_j_per_m = 315
beta_climb_j = -211.261
alpha_hover_w_per_m = 4.917
beta_hover_w = 275.204
"""


def write(tmp_path, text, name="scn.ini"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_minimal_scenario(tmp_path):
    scn = load_scenario(write(tmp_path, BASE))
    assert scn.system.gamma == pytest.approx(100.0)
    assert scn.system.p_target_pa == pytest.approx(100.0 * 4e-21 * 20e6)
    assert scn.environment.a == 4.88
    assert scn.uav.alpha_cl == 315.0
    # defaults kick in for the optional sections
    assert scn.sweeps.delta == 0.9
    assert scn.sweeps.gamma_list == (pytest.approx(100.0),)
    assert scn.sweeps.area_radius_list == (pytest.approx(180.48),)
    assert scn.seeds == (0,)


def test_builtin_scenarios_load():
    baseline = load_scenario(builtin_scenario_path("baseline"))
    assert baseline.system.h_min == 15.0
    assert baseline.sweeps.gamma_list == (10.0, 100.0, 1000.0)
    ablation = load_scenario(builtin_scenario_path("no_vehicle_energy"))
    assert ablation.uav.alpha_cl == 0.0
    assert ablation.system.gamma == pytest.approx(0.01)
    with pytest.raises(ConfigError):
        builtin_scenario_path("nonexistent")


def test_missing_file():
    with pytest.raises(ConfigError):
        load_scenario("/nonexistent/scenario.ini")


def test_unknown_key_rejected(tmp_path):
    with pytest.raises(ConfigError, match="unknown key"):
        load_scenario(write(tmp_path, BASE + "\n[sweeps]\nh_strt_m = 15\n"))


def test_unknown_section_rejected(tmp_path):
    with pytest.raises(ConfigError, match="unknown scenario section"):
        load_scenario(write(tmp_path, BASE + "\n[extras]\nfoo = 1\n"))


def test_gamma_and_p_target_mutually_exclusive(tmp_path):
    both = BASE.replace("gamma = 100", "gamma = 100\np_target_w = 8e-12")
    with pytest.raises(ConfigError, match="exactly one"):
        load_scenario(write(tmp_path, both))
    neither = BASE.replace("gamma = 100\n", "")
    with pytest.raises(ConfigError, match="exactly one"):
        load_scenario(write(tmp_path, neither))


def test_missing_required_section(tmp_path):
    text = BASE.replace("[uav]", "[sweeps]").replace("alpha_climb_j_per_m", "delta")
    with pytest.raises(ConfigError):
        load_scenario(write(tmp_path, text))


def test_non_numeric_value(tmp_path):
    with pytest.raises(ConfigError, match="not a number"):
        load_scenario(write(tmp_path, BASE.replace("gamma = 100", "gamma = lots")))


def test_excess_loss_ordering_enforced(tmp_path):
    bad = BASE.replace("eta_los_db = 0.1", "eta_los_db = 22")
    with pytest.raises(ConfigError):
        load_scenario(write(tmp_path, bad))


def test_carrier_frequency_cross_check(tmp_path):
    # a wildly inconsistent (g0, carrier) pair must be rejected
    bad = BASE.replace("g0 = 1.42e-4", "g0 = 1.42e-4\ncarrier_frequency_hz = 60e9")
    with pytest.raises(ConfigError):
        load_scenario(write(tmp_path, bad))


def test_sweep_grid_construction(tmp_path):
    text = BASE + "\n[sweeps]\nh_start_m = 15\nh_stop_m = 17\nh_step_m = 1\n"
    scn = load_scenario(write(tmp_path, text))
    assert scn.sweeps.altitude_grid() == [15.0, 16.0, 17.0]


def test_sweep_single_point_grid(tmp_path):
    text = BASE + "\n[sweeps]\nphi_start_deg = 45\nphi_stop_deg = 45\nphi_step_deg = 1\n"
    scn = load_scenario(write(tmp_path, text))
    assert scn.sweeps.phi_grid() == [45.0]


def test_sweep_bad_step(tmp_path):
    text = BASE + "\n[sweeps]\nh_step_m = -1\n"
    scn = load_scenario(write(tmp_path, text))
    with pytest.raises(ConfigError):
        scn.sweeps.altitude_grid()


def test_seeds_and_output(tmp_path):
    text = BASE + "\n[seeds]\nseeds = 1, 2, 3\n\n[output]\ndirectory = results\n"
    scn = load_scenario(write(tmp_path, text))
    assert scn.seeds == (1, 2, 3)
    assert str(scn.output_dir) == "results"
