"""Climbing gait: one leg swings to a higher foothold while the other
three stay attached and carry the body.

A cycle is four steps, one swing per leg. Each step detaches the swing
leg, moves its cup one step length up the wall, re-attaches, and then
advances the body (either a quarter step after every swing, the
default crawl, or the whole step once per cycle).

All foothold and body positions are kept in integer micrometres so the
cycle-closure invariant -- after a full cycle the body has advanced
exactly one step length and the body-frame stance pattern is identical
to where it started -- holds exactly, with no float drift. Millimetre
floats appear only at the kinematics boundary.
"""

import math
from dataclasses import dataclass, field

from .errors import BadOrder, GaitValidationError, KinematicsError, UnreachableFoothold
from .kinematics import CupTarget, ElbowBranch, JointAngles, reachable, solve_leg

LEG_IDS = (1, 2, 3, 4)
UM_PER_MM = 1000

ADVANCE_PER_STEP = "per_step"
ADVANCE_PER_CYCLE = "per_cycle"
ADVANCE_MODES = (ADVANCE_PER_STEP, ADVANCE_PER_CYCLE)


def mm_to_um(value_mm):
    return round(value_mm * UM_PER_MM)


def um_to_mm(value_um):
    return value_um / UM_PER_MM


def split_um(total_um, parts):
    """Split an integer micrometre distance into `parts` near-equal integer
    shares that sum exactly to the total."""
    q, r = divmod(total_um, parts)
    return [q + 1] * r + [q] * (parts - r)


@dataclass
class FootholdMap:
    """Per-leg cup contact points in the body frame plus attachment flags.

    Positions are integer micrometres; use from_mm()/point_mm() at the
    millimetre boundary.
    """

    points_um: dict
    attached: dict

    def __post_init__(self):
        if sorted(self.points_um) != list(LEG_IDS) or sorted(self.attached) != list(LEG_IDS):
            raise ValueError(f"foothold map must cover exactly legs {LEG_IDS}")
        self.points_um = {leg: (int(p[0]), int(p[1])) for leg, p in self.points_um.items()}

    @classmethod
    def from_mm(cls, points_mm, attached=None):
        points = {leg: (mm_to_um(p[0]), mm_to_um(p[1])) for leg, p in points_mm.items()}
        if attached is None:
            attached = {leg: True for leg in points_mm}
        return cls(points, dict(attached))

    @classmethod
    def square_stance(cls, half_x_mm=80.0, half_y_mm=80.0):
        """Default symmetric stance: legs 1..4 at the corners of a rectangle,
        numbered counter-clockwise from front-left (+y is the climb direction)."""
        return cls.from_mm({
            1: (-half_x_mm, half_y_mm),
            2: (half_x_mm, half_y_mm),
            3: (half_x_mm, -half_y_mm),
            4: (-half_x_mm, -half_y_mm),
        })

    def point_mm(self, leg):
        x, y = self.points_um[leg]
        return um_to_mm(x), um_to_mm(y)

    def copy(self):
        return FootholdMap(dict(self.points_um), dict(self.attached))

    def attached_count(self):
        return sum(1 for flag in self.attached.values() if flag)


@dataclass(frozen=True)
class GaitStep:
    """One swing: which leg moves, where its cup lands (body frame at the
    moment of re-attachment), and how far the body advances afterwards."""

    swing_leg: int
    new_foothold_um: tuple
    body_advance_um: int

    @property
    def new_foothold_mm(self):
        return um_to_mm(self.new_foothold_um[0]), um_to_mm(self.new_foothold_um[1])

    @property
    def body_advance_mm(self):
        return um_to_mm(self.body_advance_um)


@dataclass
class GaitScript:
    """A validated one-cycle plan plus the planning parameters needed to
    replay or compile it."""

    steps: list
    step_length_um: int
    initial: FootholdMap
    advance_mode: str = ADVANCE_PER_STEP
    z_mm: float = 100.0
    k_rad: float = math.pi / 2
    lift_mm: float = 20.0
    branch: ElbowBranch = ElbowBranch.PLUS

    @property
    def step_length_mm(self):
        return um_to_mm(self.step_length_um)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    step: int = -1
    leg: int = -1

    def __str__(self):
        where = []
        if self.step >= 0:
            where.append(f"step {self.step}")
        if self.leg >= 0:
            where.append(f"leg {self.leg}")
        prefix = f"[{', '.join(where)}] " if where else ""
        return f"{prefix}{self.kind}: {self.detail}"


@dataclass
class GaitValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, detail, step=-1, leg=-1):
        self.violations.append(Violation(kind, detail, step, leg))


def generate_cycle(geom, footholds, step_length_mm, order=LEG_IDS, *,
                   z_mm=100.0, k_rad=math.pi / 2, lift_mm=20.0,
                   advance_mode=ADVANCE_PER_STEP, branch=ElbowBranch.PLUS,
                   limits=None):
    """Build one climbing cycle: each leg in `order` swings one step length
    up the wall (+y), with the body advance split per `advance_mode`.

    The result is validated before it is returned; reach problems raise
    UnreachableFoothold naming the leg and step.
    """
    if step_length_mm <= 0.0:
        raise ValueError(f"step_length must be > 0, got {step_length_mm}")
    if sorted(order) != list(LEG_IDS):
        raise BadOrder(f"swing order {tuple(order)} is not a permutation of {LEG_IDS}")
    if advance_mode not in ADVANCE_MODES:
        raise ValueError(f"advance_mode must be one of {ADVANCE_MODES}, got {advance_mode!r}")

    length_um = mm_to_um(step_length_mm)
    if advance_mode == ADVANCE_PER_STEP:
        advances = split_um(length_um, len(order))
    else:
        advances = [0] * (len(order) - 1) + [length_um]

    # Replay in the wall frame: body starts at 0, footholds at their
    # body-frame offsets.
    wall_um = dict(footholds.points_um)
    body_um = 0
    steps = []
    for leg, advance in zip(order, advances):
        new_wall = (wall_um[leg][0], wall_um[leg][1] + length_um)
        steps.append(GaitStep(
            swing_leg=leg,
            new_foothold_um=(new_wall[0], new_wall[1] - body_um),
            body_advance_um=advance,
        ))
        wall_um[leg] = new_wall
        body_um += advance

    script = GaitScript(
        steps=steps,
        step_length_um=length_um,
        initial=footholds.copy(),
        advance_mode=advance_mode,
        z_mm=z_mm,
        k_rad=k_rad,
        lift_mm=lift_mm,
        branch=branch,
    )

    report = validate(script, geom, footholds, limits=limits)
    for violation in report.violations:
        if violation.kind == "unreachable":
            raise UnreachableFoothold(str(violation), leg=violation.leg, step=violation.step)
    if not report.ok:
        raise GaitValidationError(report)
    return script


def _check_reach(report, geom, point_um, z_mm, k_rad, limits, step, leg, label):
    x, y = um_to_mm(point_um[0]), um_to_mm(point_um[1])
    if z_mm < 0.0:
        report.add("unreachable",
                   f"{label} ({x}, {y}) mm: clearance {z_mm} mm is negative "
                   "(lift exceeds the wall distance)",
                   step=step, leg=leg)
        return
    ok, reason = reachable(geom, CupTarget(x, y, z_mm, k_rad), limits)
    if not ok:
        report.add("unreachable",
                   f"{label} ({x}, {y}) mm at z={z_mm} mm: {reason}",
                   step=step, leg=leg)


def validate(script, geom, footholds, limits=None):
    """Replay a script symbolically against a starting stance and report
    every violated invariant (no exceptions; the report carries them).

    Checks: swing coverage (each leg exactly once), at least three legs
    attached at every instant, every commanded foothold inside the
    reachable workspace (stance points, swing endpoints, and the lifted
    mid-swing point), and exact cycle closure in integer micrometres.
    """
    report = GaitValidationReport()

    swings = [s.swing_leg for s in script.steps]
    if sorted(swings) != list(LEG_IDS):
        report.add("coverage", f"swing legs {swings} do not cover each of {LEG_IDS} exactly once")

    z = script.z_mm
    z_lifted = script.z_mm - script.lift_mm
    wall_um = dict(footholds.points_um)
    attached = dict(footholds.attached)
    body_um = 0

    for leg in LEG_IDS:
        if attached[leg]:
            _check_reach(report, geom, wall_um[leg], z, script.k_rad, limits, -1, leg,
                         "initial foothold")

    for index, step in enumerate(script.steps):
        leg = step.swing_leg
        old_bf = (wall_um[leg][0], wall_um[leg][1] - body_um)
        new_bf = step.new_foothold_um

        if step.body_advance_um < 0:
            report.add("advance", f"negative body advance {step.body_advance_um} um",
                       step=index, leg=leg)
        attached[leg] = False
        count = sum(1 for flag in attached.values() if flag)
        if count < 3:
            report.add("attach_count", f"attached={count} during swing", step=index, leg=leg)

        _check_reach(report, geom, old_bf, z, script.k_rad, limits, index, leg, "swing start")
        mid_bf = ((old_bf[0] + new_bf[0]) // 2, (old_bf[1] + new_bf[1]) // 2)
        _check_reach(report, geom, mid_bf, z_lifted, script.k_rad, limits, index, leg,
                     "lifted mid-swing point")
        _check_reach(report, geom, new_bf, z, script.k_rad, limits, index, leg, "swing end")

        wall_um[leg] = (new_bf[0], new_bf[1] + body_um)
        attached[leg] = True
        body_um += step.body_advance_um

        for other in LEG_IDS:
            if attached[other]:
                stance_bf = (wall_um[other][0], wall_um[other][1] - body_um)
                _check_reach(report, geom, stance_bf, z, script.k_rad, limits, index, other,
                             "stance point after advance")

    if body_um != script.step_length_um:
        report.add("closure",
                   f"body advanced {body_um} um over the cycle, expected {script.step_length_um}")
    final_bf = {leg: (wall_um[leg][0], wall_um[leg][1] - body_um) for leg in LEG_IDS}
    if final_bf != footholds.points_um:
        report.add("closure",
                   f"body-frame stance {final_bf} does not return to initial "
                   f"{footholds.points_um}")
    if attached != footholds.attached:
        report.add("closure", "attachment flags changed over the cycle")
    return report


def swing_waypoint(old_mm, new_mm, progress, z_mm, lift_mm):
    """Cup pose along a swing: straight line in the wall plane with a
    triangular lift toward the body, peaking at mid-swing."""
    x = old_mm[0] + (new_mm[0] - old_mm[0]) * progress
    y = old_mm[1] + (new_mm[1] - old_mm[1]) * progress
    z = z_mm - lift_mm * (1.0 - abs(2.0 * progress - 1.0))
    return x, y, z


@dataclass(frozen=True)
class JointTableRow:
    """One compiled sample: commanded pose and solved angles for one leg."""

    t_s: float
    leg: int
    angles: JointAngles
    attached: bool
    target_mm: tuple  # (x, y, z) the row was solved for


def compile_joint_table(script, geom, z_mm, k_rad, samples_per_step, *,
                        step_duration_s=1.0, limits=None):
    """Sample a validated script into per-leg joint angles.

    Each step contributes `samples_per_step` uniformly spaced samples;
    the swing runs over the whole step and the body advance lands
    between the last sample of a step and the first of the next. Rows
    come out in time order, legs 1..4 within each sample.
    """
    if samples_per_step < 2:
        raise ValueError(f"samples_per_step must be >= 2, got {samples_per_step}")
    report = validate(script, geom, script.initial, limits=limits)
    if not report.ok:
        raise GaitValidationError(report)

    rows = []
    wall_um = dict(script.initial.points_um)
    body_um = 0
    for index, step in enumerate(script.steps):
        swing_leg = step.swing_leg
        old_bf = (um_to_mm(wall_um[swing_leg][0]),
                  um_to_mm(wall_um[swing_leg][1] - body_um))
        new_bf = step.new_foothold_mm
        for j in range(samples_per_step):
            t = (index + j / samples_per_step) * step_duration_s
            progress = j / (samples_per_step - 1)
            for leg in LEG_IDS:
                if leg == swing_leg:
                    x, y, z = swing_waypoint(old_bf, new_bf, progress, z_mm, script.lift_mm)
                    attached = False
                else:
                    x = um_to_mm(wall_um[leg][0])
                    y = um_to_mm(wall_um[leg][1] - body_um)
                    z = z_mm
                    attached = True
                try:
                    angles = solve_leg(geom, CupTarget(x, y, z, k_rad), script.branch, limits)
                except KinematicsError as exc:
                    raise type(exc)(
                        f"step {index} sample {j} leg {leg}: {exc}", plane=exc.plane
                    ) from exc
                rows.append(JointTableRow(t, leg, angles, attached, (x, y, z)))
        wall_um[swing_leg] = (step.new_foothold_um[0], step.new_foothold_um[1] + body_um)
        body_um += step.body_advance_um
    return rows
