"""Fixed-tick scenario runner: the full robot on an inclined platform.

A run executes the climbing cycle tick by tick. Every step goes
through four phases -- vent the swing cup, swing it to the next
foothold, pull vacuum until it grips, then advance the body -- with
phase durations taken from the config and rounded to whole ticks.

Gravity along the wall loads the attached cups tangentially. When the
load approaches the friction-limited holding capacity part of each
commanded body advance is lost to slip; when it exceeds capacity the
controller re-attaches the released cup once and aborts the run if the
overload persists (the report is marked incomplete rather than raising).

Runs are bit-for-bit deterministic: no wall clock, fixed iteration
order, and the seed only feeds the optional pressure-trace jitter,
which is off by default.
"""

import math
import random
from dataclasses import dataclass, field, replace

from .errors import ClimberError, ZeroCapacity
from .gait import (
    ADVANCE_MODES,
    ADVANCE_PER_STEP,
    LEG_IDS,
    FootholdMap,
    generate_cycle,
    split_um,
    swing_waypoint,
    um_to_mm,
)
from .kinematics import CupTarget, ElbowBranch, JointLimits, LegGeometry, solve_leg
from .pneumatics import (
    DEFAULT_PUMP_LEGS,
    AdhesionModel,
    PneumaticState,
    Valve,
    holding_capacity,
    pressure_under_suction,
)


def _default_stance():
    return {1: (-80.0, 80.0), 2: (80.0, 80.0), 3: (80.0, -80.0), 4: (-80.0, -80.0)}


@dataclass
class GaitParams:
    """Gait planning knobs for a scenario (mm, radians, seconds)."""

    stance_mm: dict = field(default_factory=_default_stance)
    step_length_mm: float = 40.0
    order: tuple = LEG_IDS
    lift_mm: float = 20.0
    z_mm: float = 100.0
    k_rad: float = math.pi / 2
    branch: ElbowBranch = ElbowBranch.PLUS
    samples_per_step: int = 10
    advance_mode: str = ADVANCE_PER_STEP
    swing_s: float = 0.6
    advance_s: float = 0.4

    def __post_init__(self):
        if self.step_length_mm <= 0.0:
            raise ValueError(f"step_length_mm must be > 0, got {self.step_length_mm}")
        if self.samples_per_step < 2:
            raise ValueError(f"samples_per_step must be >= 2, got {self.samples_per_step}")
        if self.advance_mode not in ADVANCE_MODES:
            raise ValueError(f"advance_mode must be one of {ADVANCE_MODES}")
        if self.swing_s <= 0.0 or self.advance_s <= 0.0:
            raise ValueError("swing_s and advance_s must be > 0")
        if not 0.0 <= self.lift_mm <= self.z_mm:
            raise ValueError(
                f"lift_mm must lie in [0, z_mm], got lift={self.lift_mm} z={self.z_mm}"
            )


@dataclass
class ScenarioConfig:
    """Everything one deterministic run needs.

    The power/slip calibration values (servo and pump draw, lift
    efficiency, slip gain and cap, robot mass) are desk-scale defaults,
    not measurements; they reproduce the qualitative speed/power trends
    against climb angle, not absolute numbers.
    """

    climb_angle_deg: float = 0.0
    mass_kg: float = 2.0
    gravity_m_s2: float = 9.81
    cycles: int = 3
    tick_s: float = 0.01
    geometry: LegGeometry = field(default_factory=LegGeometry)
    gait: GaitParams = field(default_factory=GaitParams)
    adhesion: AdhesionModel = field(default_factory=AdhesionModel)
    pump_legs: dict = field(default_factory=lambda: dict(DEFAULT_PUMP_LEGS))
    limits: JointLimits = None
    servo_power_w: float = 6.0
    pump_power_w: float = 5.0
    lift_efficiency: float = 0.25
    c_slip: float = 0.3
    s_max: float = 0.9
    seed: int = 0
    noise_kpa: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.climb_angle_deg <= 90.0:
            raise ValueError(f"climb_angle_deg must be in [0, 90], got {self.climb_angle_deg}")
        if self.mass_kg <= 0.0:
            raise ValueError(f"mass_kg must be > 0, got {self.mass_kg}")
        if self.cycles < 1:
            raise ValueError(f"cycles must be >= 1, got {self.cycles}")
        if self.tick_s <= 0.0:
            raise ValueError(f"tick_s must be > 0, got {self.tick_s}")
        if not 0.0 < self.lift_efficiency <= 1.0:
            raise ValueError(f"lift_efficiency must be in (0, 1], got {self.lift_efficiency}")
        if self.c_slip < 0.0 or not 0.0 <= self.s_max < 1.0:
            raise ValueError("need c_slip >= 0 and 0 <= s_max < 1")
        if self.noise_kpa < 0.0:
            raise ValueError(f"noise_kpa must be >= 0, got {self.noise_kpa}")

    @property
    def climb_angle_rad(self):
        return math.radians(self.climb_angle_deg)

    @property
    def tangential_load_n(self):
        """Gravity component along the wall, carried by the attached cups."""
        return self.mass_kg * self.gravity_m_s2 * math.sin(self.climb_angle_rad)


def slip_model(load_tangential_n, capacity_tangential_n, c_slip=0.3, s_max=0.9):
    """Fraction of commanded body advance lost to cup slip.

    Linear in load/capacity with gain c_slip, clamped to [0, s_max).
    Zero load slips nothing; zero capacity under load is an error.
    """
    if load_tangential_n <= 0.0:
        return 0.0
    if capacity_tangential_n <= 0.0:
        raise ZeroCapacity(
            f"tangential load {load_tangential_n:.3f} N with zero holding capacity"
        )
    return min(c_slip * (load_tangential_n / capacity_tangential_n), s_max)


def power_model(config, speed_mm_s, active_pumps):
    """Instantaneous electrical draw in watts.

    Servo idle draw, plus the running pumps, plus the mechanical lift
    rate m*g*sin(angle)*v scaled by the drivetrain efficiency.
    """
    lift_w = (config.mass_kg * config.gravity_m_s2
              * math.sin(config.climb_angle_rad)
              * (speed_mm_s / 1000.0)) / config.lift_efficiency
    return config.servo_power_w + active_pumps * config.pump_power_w + lift_w


@dataclass(frozen=True)
class TickRecord:
    """State snapshot at the end of one tick."""

    t_s: float
    body_mm: float
    angles: dict       # leg -> JointAngles
    valve: dict        # leg -> Valve
    pressure_kpa: dict
    attached: dict     # leg -> bool
    power_w: float
    slip: float


@dataclass
class SimReport:
    """Per-tick series plus run summary."""

    climb_angle_deg: float
    cycles: int
    tick_s: float
    records: list
    displacement_mm: float
    duration_s: float
    average_speed_mm_s: float
    average_power_w: float
    total_energy_j: float
    slip_count: int
    completed: bool
    failure_tick: int = None
    failure_reason: str = None


def _phase_ticks(duration_s, tick_s):
    return max(1, round(duration_s / tick_s))


def run_scenario(config):
    """Run one scenario and return its SimReport.

    Deterministic for a given config. Overload and attach timeouts mark
    the report completed=False (with failing tick and reason) instead of
    raising; planning errors (bad stance, unreachable footholds) raise.
    """
    geom = config.geometry
    gait = config.gait
    model = config.adhesion
    tick = config.tick_s
    load_n = config.tangential_load_n

    footholds = FootholdMap.from_mm(gait.stance_mm)
    script = generate_cycle(
        geom, footholds, gait.step_length_mm, gait.order,
        z_mm=gait.z_mm, k_rad=gait.k_rad, lift_mm=gait.lift_mm,
        advance_mode=gait.advance_mode, branch=gait.branch, limits=config.limits,
    )

    n_vent = _phase_ticks(model.vent_s, tick)
    n_swing = _phase_ticks(gait.swing_s, tick)
    n_attach = _phase_ticks(model.dwell_s, tick)
    n_advance = _phase_ticks(gait.advance_s, tick)

    pstate = PneumaticState.initial(config.pump_legs, pumps_on=True)
    for leg in LEG_IDS:
        pstate.valve[leg] = Valve.SUCTION
        pstate.pressure_kpa[leg] = model.equilibrium_kpa
    active_pumps = sum(1 for on in pstate.pump_on.values() if on)

    rng = random.Random(config.seed)
    jitter = config.noise_kpa

    wall_um = dict(footholds.points_um)
    body_um = 0
    records = []
    energy_j = 0.0
    slip_count = 0
    retry_used = False
    failed = False
    failure_tick = None
    failure_reason = None

    def capacity_n():
        return holding_capacity(pstate, model)[1]

    def solve_all(swing_leg=None, swing_target=None):
        angles = {}
        for leg in LEG_IDS:
            if leg == swing_leg:
                x, y, z = swing_target
            else:
                x = um_to_mm(wall_um[leg][0])
                y = um_to_mm(wall_um[leg][1] - body_um)
                z = gait.z_mm
            angles[leg] = solve_leg(geom, CupTarget(x, y, z, gait.k_rad),
                                    gait.branch, config.limits)
        return angles

    def record(tick_index, angles, speed_mm_s, slip_now):
        nonlocal energy_j
        power = power_model(config, speed_mm_s, active_pumps)
        energy_j += power * tick
        pressures = {}
        for leg in LEG_IDS:
            p = pstate.pressure_kpa[leg]
            if jitter > 0.0:
                p += rng.uniform(-jitter, jitter)
            pressures[leg] = p
        records.append(TickRecord(
            t_s=(tick_index + 1) * tick,
            body_mm=um_to_mm(body_um),
            angles=angles,
            valve=dict(pstate.valve),
            pressure_kpa=pressures,
            attached={leg: pstate.is_attached(leg, model) for leg in LEG_IDS},
            power_w=power,
            slip=slip_now,
        ))

    global_tick = 0
    for _cycle in range(config.cycles):
        if failed:
            break
        for step in script.steps:
            if failed:
                break
            leg = step.swing_leg
            old_wall = wall_um[leg]
            new_wall = (step.new_foothold_um[0], step.new_foothold_um[1] + body_um)
            old_bf = (um_to_mm(old_wall[0]), um_to_mm(old_wall[1] - body_um))
            new_bf = step.new_foothold_mm

            attach_extended = False
            phase_queue = ["vent", "swing", "attach", "advance"]
            qi = 0
            while qi < len(phase_queue) and not failed:
                phase = phase_queue[qi]
                if phase == "vent":
                    pstate.valve[leg] = Valve.VENT
                    vent_p0 = pstate.pressure_kpa[leg]
                    n = n_vent
                elif phase == "swing":
                    n = n_swing
                elif phase in ("attach", "recover"):
                    pstate.valve[leg] = Valve.SUCTION
                    n = n_attach
                else:  # advance
                    slip = slip_model(load_n, capacity_n(), config.c_slip, config.s_max)
                    effective_um = round(step.body_advance_um * (1.0 - slip))
                    shares = split_um(effective_um, n_advance)
                    if slip > 0.0 and step.body_advance_um > 0:
                        slip_count += 1
                    n = n_advance

                restart_step = False
                for j in range(n):
                    frac = (j + 1) / n
                    for other in LEG_IDS:
                        if pstate.valve[other] is Valve.SUCTION and pstate.pump_running(other):
                            pstate.pressure_kpa[other] = pressure_under_suction(
                                model, pstate.pressure_kpa[other], tick)
                    speed = 0.0
                    slip_now = 0.0
                    if phase == "vent":
                        pstate.pressure_kpa[leg] = vent_p0 * (1.0 - frac)
                        target = (old_bf[0], old_bf[1], gait.z_mm)
                    elif phase == "swing":
                        pstate.pressure_kpa[leg] = 0.0
                        target = swing_waypoint(old_bf, new_bf, frac, gait.z_mm, gait.lift_mm)
                    elif phase == "attach":
                        target = (new_bf[0], new_bf[1], gait.z_mm)
                    elif phase == "recover":
                        target = (old_bf[0], old_bf[1], gait.z_mm)
                    else:  # advance
                        body_um += shares[j]
                        speed = um_to_mm(shares[j]) / tick
                        slip_now = slip
                        target = None

                    if target is None:
                        angles = solve_all()
                    else:
                        angles = solve_all(leg, target)

                    cap = capacity_n()
                    if load_n > cap:
                        if phase == "vent" and not retry_used:
                            # One controller retry: re-grip the cup that was
                            # just released and hold position for a dwell.
                            retry_used = True
                            record(global_tick, angles, speed, slip_now)
                            global_tick += 1
                            phase_queue = ["recover", "vent", "swing", "attach", "advance"]
                            qi = 0
                            restart_step = True
                            break
                        failed = True
                        failure_tick = global_tick
                        failure_reason = (f"adhesion overload: tangential load {load_n:.3f} N "
                                          f"> holding capacity {cap:.3f} N")
                        record(global_tick, angles, speed, slip_now)
                        global_tick += 1
                        break

                    record(global_tick, angles, speed, slip_now)
                    global_tick += 1

                if restart_step or failed:
                    continue

                if phase == "attach":
                    if pstate.pressure_kpa[leg] > model.attach_threshold_kpa:
                        if not attach_extended:
                            attach_extended = True
                            continue  # one more dwell on the same phase
                        failed = True
                        failure_tick = global_tick - 1
                        failure_reason = (
                            f"attach timeout on leg {leg}: "
                            f"{pstate.pressure_kpa[leg]:.3f} kPa above threshold "
                            f"{model.attach_threshold_kpa} kPa")
                        break
                    wall_um[leg] = new_wall
                elif phase == "recover":
                    cap = capacity_n()
                    if load_n > cap:
                        failed = True
                        failure_tick = global_tick - 1
                        failure_reason = (f"adhesion overload after re-attach: load "
                                          f"{load_n:.3f} N > capacity {cap:.3f} N")
                        break
                qi += 1

    duration_s = global_tick * tick
    displacement_mm = um_to_mm(body_um)
    avg_speed = displacement_mm / duration_s if duration_s > 0.0 else 0.0
    avg_power = energy_j / duration_s if duration_s > 0.0 else 0.0
    return SimReport(
        climb_angle_deg=config.climb_angle_deg,
        cycles=config.cycles,
        tick_s=tick,
        records=records,
        displacement_mm=displacement_mm,
        duration_s=duration_s,
        average_speed_mm_s=avg_speed,
        average_power_w=avg_power,
        total_energy_j=energy_j,
        slip_count=slip_count,
        completed=not failed,
        failure_tick=failure_tick,
        failure_reason=failure_reason,
    )


@dataclass(frozen=True)
class SweepRow:
    angle_deg: float
    avg_speed_mm_s: float
    avg_power_w: float
    completed: bool


def sweep_climb_angle(base, angles_deg):
    """Run the base scenario once per climb angle.

    Returns rows sorted by angle. A failed angle (incomplete run or a
    planning error) is flagged in its row instead of aborting the sweep.
    """
    if not angles_deg:
        raise ValueError("at least one climb angle is required")
    for angle in angles_deg:
        if not 0.0 <= angle <= 90.0:
            raise ValueError(f"climb angle {angle} outside [0, 90] deg")

    rows = []
    for angle in angles_deg:
        config = replace(base, climb_angle_deg=angle)
        try:
            report = run_scenario(config)
            rows.append(SweepRow(angle, report.average_speed_mm_s,
                                 report.average_power_w, report.completed))
        except ClimberError:
            rows.append(SweepRow(angle, float("nan"), float("nan"), False))
    rows.sort(key=lambda row: row.angle_deg)
    return rows
