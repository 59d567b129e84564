"""Suction subsystem: two diaphragm pumps feeding four cups through
per-leg solenoid valves on a relay board.

Each valve routes its cup either to its assigned pump (SUCTION) or to
atmosphere (VENT). Gauge pressures are kPa and non-positive; a cup
counts as attached only while its valve is on SUCTION, its pump is
running, and its pressure has passed the attach threshold -- so an
attached reading can never coexist with a vented valve or a dead pump.

Pressure dynamics are first order: under suction the cup pressure
relaxes exponentially toward the pump's steady vacuum level (time
constant dwell/3, so one dwell settles to within 5%), optionally offset
by a constant leak that raises the reachable equilibrium; venting ramps
the pressure linearly back to zero over the vent time.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import AttachTimeout, NotAttached, PumpOff

DEFAULT_PUMP_LEGS = {"A": (1, 2), "B": (3, 4)}


class Valve(Enum):
    SUCTION = "suction"
    VENT = "vent"


@dataclass(frozen=True)
class AdhesionModel:
    """Calibration of one cup/pump pair.

    These are simulation calibration values, not measurements of a
    physical robot; all of them are exposed in the config file.
    """

    cup_area_mm2: float = 1963.0
    vacuum_kpa: float = -50.0
    attach_threshold_kpa: float = -30.0
    dwell_s: float = 0.5
    vent_s: float = 0.2
    friction: float = 0.5
    leak_kpa_per_s: float = 0.0

    def __post_init__(self):
        if self.cup_area_mm2 <= 0.0:
            raise ValueError(f"cup_area_mm2 must be > 0, got {self.cup_area_mm2}")
        if not self.vacuum_kpa < self.attach_threshold_kpa < 0.0:
            raise ValueError(
                "need vacuum_kpa < attach_threshold_kpa < 0, got "
                f"{self.vacuum_kpa} / {self.attach_threshold_kpa}"
            )
        if self.dwell_s <= 0.0 or self.vent_s <= 0.0:
            raise ValueError("dwell_s and vent_s must be > 0")
        if not 0.0 < self.friction <= 2.0:
            raise ValueError(f"friction must be in (0, 2], got {self.friction}")
        if self.leak_kpa_per_s < 0.0:
            raise ValueError(f"leak_kpa_per_s must be >= 0, got {self.leak_kpa_per_s}")

    @property
    def time_constant_s(self):
        return self.dwell_s / 3.0

    @property
    def equilibrium_kpa(self):
        """Steady pressure under suction once the leak balances the pump."""
        return self.vacuum_kpa + self.leak_kpa_per_s * self.time_constant_s


def pressure_under_suction(model, p0_kpa, dt_s):
    """Closed-form relaxation toward the leak-shifted equilibrium."""
    p_eq = model.equilibrium_kpa
    return p_eq + (p0_kpa - p_eq) * math.exp(-dt_s / model.time_constant_s)


def pressure_while_venting(p0_kpa, dt_s, vent_s):
    """Linear ramp from p0 to exactly 0 over the vent time."""
    if dt_s >= vent_s:
        return 0.0
    return p0_kpa * (1.0 - dt_s / vent_s)


@dataclass
class PneumaticState:
    """Snapshot of pumps, valves, and cup pressures.

    Transition helpers return updated copies; treat instances as
    immutable snapshots and thread mutations through one owner.
    """

    pump_on: dict
    valve: dict
    pressure_kpa: dict
    pump_of_leg: dict

    @classmethod
    def initial(cls, pump_legs=None, pumps_on=True):
        """All cups vented at atmospheric pressure, pumps running."""
        pump_legs = DEFAULT_PUMP_LEGS if pump_legs is None else pump_legs
        pump_of_leg = {}
        for pump, legs in pump_legs.items():
            for leg in legs:
                pump_of_leg[leg] = pump
        if sorted(pump_of_leg) != [1, 2, 3, 4]:
            raise ValueError(f"pump assignment must cover legs 1..4 once each, got {pump_legs}")
        return cls(
            pump_on={pump: pumps_on for pump in pump_legs},
            valve={leg: Valve.VENT for leg in pump_of_leg},
            pressure_kpa={leg: 0.0 for leg in pump_of_leg},
            pump_of_leg=pump_of_leg,
        )

    def copy(self):
        return PneumaticState(dict(self.pump_on), dict(self.valve),
                              dict(self.pressure_kpa), dict(self.pump_of_leg))

    def pump_running(self, leg):
        return self.pump_on[self.pump_of_leg[leg]]

    def is_attached(self, leg, model):
        return (self.valve[leg] is Valve.SUCTION
                and self.pump_running(leg)
                and self.pressure_kpa[leg] <= model.attach_threshold_kpa)

    def attached_legs(self, model):
        return [leg for leg in sorted(self.valve) if self.is_attached(leg, model)]

    def with_pump(self, pump, on):
        new = self.copy()
        new.pump_on[pump] = on
        return new

    def with_valve(self, leg, valve):
        new = self.copy()
        new.valve[leg] = valve
        return new

    def with_pressure(self, leg, pressure_kpa):
        new = self.copy()
        new.pressure_kpa[leg] = pressure_kpa
        return new

    def suction_count(self, pump):
        return sum(1 for leg, v in self.valve.items()
                   if v is Valve.SUCTION and self.pump_of_leg[leg] == pump)


@dataclass(frozen=True)
class PneumaticEvent:
    """One trace record: time within the sequence, leg, valve, pressure,
    and whether the leg counts as attached at that instant."""

    t_s: float
    leg: int
    valve: Valve
    pressure_kpa: float
    attached: bool


def attach_sequence(state, leg, model):
    """Switch a vented leg to SUCTION and dwell until it grips.

    Returns (events, new_state). Raises PumpOff if the assigned pump is
    not running, AttachTimeout if the pressure cannot pass the attach
    threshold within one dwell (leaky surface: the leak-shifted
    equilibrium sits above the threshold).
    """
    if state.valve[leg] is not Valve.VENT:
        raise ValueError(f"leg {leg} valve must be VENT before attaching")
    if not state.pump_running(leg):
        raise PumpOff(f"pump {state.pump_of_leg[leg]} for leg {leg} is off")

    p0 = state.pressure_kpa[leg]
    p_end = pressure_under_suction(model, p0, model.dwell_s)
    events = [PneumaticEvent(0.0, leg, Valve.SUCTION, p0, False)]
    if p_end > model.attach_threshold_kpa:
        raise AttachTimeout(
            f"leg {leg} reached {p_end:.3f} kPa after {model.dwell_s} s dwell, "
            f"threshold {model.attach_threshold_kpa} kPa "
            f"(equilibrium {model.equilibrium_kpa:.3f} kPa)"
        )
    events.append(PneumaticEvent(model.dwell_s, leg, Valve.SUCTION, p_end, True))

    new = state.with_valve(leg, Valve.SUCTION)
    new.pressure_kpa[leg] = p_end
    return events, new


def detach_sequence(state, leg, model):
    """Vent an attached leg back to atmosphere. Raises NotAttached if the
    leg is not currently holding."""
    if not state.is_attached(leg, model):
        raise NotAttached(f"leg {leg} is not attached (valve={state.valve[leg].value}, "
                          f"pressure={state.pressure_kpa[leg]:.3f} kPa)")
    p0 = state.pressure_kpa[leg]
    events = [
        PneumaticEvent(0.0, leg, Valve.VENT, p0, False),
        PneumaticEvent(model.vent_s, leg, Valve.VENT, 0.0, False),
    ]
    new = state.with_valve(leg, Valve.VENT)
    new.pressure_kpa[leg] = 0.0
    return events, new


def holding_capacity(state, model):
    """Total grip of the attached cups: (normal_N, tangential_N).

    Normal force sums |pressure| * area per attached cup (kPa * mm^2 is
    millinewtons); the friction cone scales it into tangential capacity.
    """
    total_mn = 0.0
    for leg in state.attached_legs(model):
        total_mn += -state.pressure_kpa[leg] * model.cup_area_mm2
    normal_n = total_mn / 1000.0
    return normal_n, model.friction * normal_n
