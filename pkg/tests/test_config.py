import math

import pytest

from wallclimber.config import CONFIG_ENV_VAR, load_config, resolve_config_path
from wallclimber.errors import ConfigError
from wallclimber.gait import ADVANCE_PER_CYCLE
from wallclimber.kinematics import ElbowBranch
from wallclimber.simulator import ScenarioConfig


def write(tmp_path, text):
    path = tmp_path / "robot.ini"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_defaults_without_file():
    config = load_config(None)
    assert config == ScenarioConfig()
    assert config.limits is None


def test_empty_file_equals_defaults(tmp_path):
    assert load_config(write(tmp_path, "")) == ScenarioConfig()


def test_full_override(tmp_path):
    path = write(tmp_path, """
[geometry]
a1_mm = 110
a2_mm = 90
a3_mm = 120
a4_mm = 80

[joints]
limit_min_deg = -120
limit_max_deg = 120

[gait]
p1_mm = -70, 70
p2_mm = 70, 70
p3_mm = 70, -70
p4_mm = -70, -70
step_length_mm = 30
order = 2, 4, 1, 3
lift_mm = 15
z_mm = 90
k_deg = 80
branch = minus
samples_per_step = 6
advance_mode = per_cycle
swing_s = 0.5
advance_s = 0.3

[adhesion]
cup_area_mm2 = 1500
vacuum_kpa = -60
threshold_kpa = -35
dwell_s = 0.4
vent_s = 0.1
mu = 0.6
leak_kpa_s = 5

[pneumatics]
pump_a_legs = 1, 3
pump_b_legs = 2, 4

[scenario]
climb_angle_deg = 25
mass_kg = 3.5
gravity_m_s2 = 9.8
cycles = 5
tick_s = 0.02
servo_power_w = 7
pump_power_w = 4
lift_efficiency = 0.5
c_slip = 0.2
s_max = 0.8
seed = 99
noise_kpa = 0.1
""")
    config = load_config(path)
    assert config.geometry.a1 == 110.0 and config.geometry.a4 == 80.0
    assert config.limits.lower == pytest.approx(math.radians(-120))
    assert config.gait.stance_mm[3] == (70.0, -70.0)
    assert config.gait.order == (2, 4, 1, 3)
    assert config.gait.k_rad == pytest.approx(math.radians(80))
    assert config.gait.branch is ElbowBranch.MINUS
    assert config.gait.advance_mode == ADVANCE_PER_CYCLE
    assert config.adhesion.friction == 0.6
    assert config.pump_legs == {"A": (1, 3), "B": (2, 4)}
    assert config.climb_angle_deg == 25.0
    assert config.seed == 99


def test_unknown_key_named(tmp_path):
    path = write(tmp_path, "[gait]\nstep_lenght_mm = 40\n")
    with pytest.raises(ConfigError, match="step_lenght_mm"):
        load_config(path)


def test_unknown_section_named(tmp_path):
    path = write(tmp_path, "[pneumatix]\npump_a_legs = 1, 2\n")
    with pytest.raises(ConfigError, match="pneumatix"):
        load_config(path)


def test_invalid_value_reports_section(tmp_path):
    path = write(tmp_path, "[gait]\nstep_length_mm = 0\n")
    with pytest.raises(ConfigError, match=r"\[gait\].*step_length_mm"):
        load_config(path)


def test_unparseable_value(tmp_path):
    path = write(tmp_path, "[scenario]\nmass_kg = heavy\n")
    with pytest.raises(ConfigError, match="mass_kg"):
        load_config(path)


def test_joint_limits_need_both_keys(tmp_path):
    path = write(tmp_path, "[joints]\nlimit_min_deg = -90\n")
    with pytest.raises(ConfigError, match="limit_max_deg"):
        load_config(path)


def test_bad_pump_partition(tmp_path):
    path = write(tmp_path, "[pneumatics]\npump_a_legs = 1, 2\npump_b_legs = 2, 3\n")
    with pytest.raises(ConfigError, match=r"\[pneumatics\]"):
        load_config(path)


def test_missing_file_is_config_error():
    with pytest.raises(ConfigError, match="cannot read"):
        load_config("/nonexistent/robot.ini")


def test_malformed_ini(tmp_path):
    path = write(tmp_path, "step_length_mm = 40\n")  # key before any section
    with pytest.raises(ConfigError, match="malformed"):
        load_config(path)


def test_scenario_range_validation(tmp_path):
    path = write(tmp_path, "[scenario]\nclimb_angle_deg = 120\n")
    with pytest.raises(ConfigError, match=r"\[scenario\]"):
        load_config(path)


def test_resolve_path_precedence(monkeypatch, tmp_path):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    assert resolve_config_path(None) is None
    assert resolve_config_path("explicit.ini") == "explicit.ini"
    monkeypatch.setenv(CONFIG_ENV_VAR, str(tmp_path / "env.ini"))
    assert resolve_config_path(None) == str(tmp_path / "env.ini")
    assert resolve_config_path("flag.ini") == "flag.ini"  # flag still wins


def test_comments_and_inline_comments(tmp_path):
    path = write(tmp_path, """
# full-line comment
[scenario]
cycles = 4  ; inline comment
""")
    assert load_config(path).cycles == 4
