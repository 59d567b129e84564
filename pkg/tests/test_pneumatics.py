import math
import random

import pytest

from wallclimber.errors import AttachTimeout, NotAttached, PumpOff
from wallclimber.pneumatics import (
    AdhesionModel,
    PneumaticState,
    Valve,
    attach_sequence,
    detach_sequence,
    holding_capacity,
    pressure_under_suction,
    pressure_while_venting,
)

MODEL = AdhesionModel()


def attached_state(model=MODEL, legs=(1, 2, 3, 4), pressure=None):
    state = PneumaticState.initial()
    pressure = model.vacuum_kpa if pressure is None else pressure
    for leg in legs:
        state.valve[leg] = Valve.SUCTION
        state.pressure_kpa[leg] = pressure
    return state


# --- attach ---------------------------------------------------------------

def test_attach_reaches_near_vacuum_after_one_dwell():
    state = PneumaticState.initial()
    events, new = attach_sequence(state, 1, MODEL)
    # closed-form oracle: exponential decay from 0 toward the vacuum level
    # over one dwell = three time constants
    expected = MODEL.vacuum_kpa * (1.0 - math.exp(-3.0))
    assert new.pressure_kpa[1] == pytest.approx(expected, rel=1e-12)
    assert abs(new.pressure_kpa[1] - MODEL.vacuum_kpa) <= 0.05 * abs(MODEL.vacuum_kpa)
    assert new.is_attached(1, MODEL)
    assert events[0].valve is Valve.SUCTION and not events[0].attached
    assert events[-1].attached and events[-1].t_s == MODEL.dwell_s
    # input state untouched
    assert state.valve[1] is Valve.VENT


def test_attach_requires_pump():
    state = PneumaticState.initial().with_pump("A", False)
    with pytest.raises(PumpOff):
        attach_sequence(state, 1, MODEL)
    # leg 3 rides pump B, still fine
    events, new = attach_sequence(state, 3, MODEL)
    assert new.is_attached(3, MODEL)


def test_attach_requires_vented_valve():
    state = attached_state(legs=(1,))
    with pytest.raises(ValueError):
        attach_sequence(state, 1, MODEL)


def test_attach_timeout_with_leak():
    # leak equilibrium sits above the threshold, computed analytically:
    # p_eq = vacuum + leak * tau = -50 + 200 * (0.5/3) = -16.67 kPa > -30
    leaky = AdhesionModel(leak_kpa_per_s=200.0)
    assert leaky.equilibrium_kpa > leaky.attach_threshold_kpa
    state = PneumaticState.initial()
    with pytest.raises(AttachTimeout):
        attach_sequence(state, 2, leaky)


def test_attach_with_tolerable_leak():
    # equilibrium -50 + 60 * (0.5/3) = -40 kPa, still below -30
    leaky = AdhesionModel(leak_kpa_per_s=60.0)
    _, new = attach_sequence(PneumaticState.initial(), 2, leaky)
    assert new.is_attached(2, leaky)


# --- detach ---------------------------------------------------------------

def test_detach_vents_to_zero():
    state = attached_state()
    events, new = detach_sequence(state, 4, MODEL)
    assert new.pressure_kpa[4] == 0.0
    assert new.valve[4] is Valve.VENT
    assert not new.is_attached(4, MODEL)
    assert events[-1].t_s == MODEL.vent_s and events[-1].pressure_kpa == 0.0


def test_detach_requires_attached():
    with pytest.raises(NotAttached):
        detach_sequence(PneumaticState.initial(), 1, MODEL)


def test_detach_attach_round_trip():
    state = attached_state()
    _, vented = detach_sequence(state, 2, MODEL)
    _, regripped = attach_sequence(vented, 2, MODEL)
    assert regripped.is_attached(2, MODEL)


# --- pressure dynamics ----------------------------------------------------

def test_suction_pressure_monotone_decreasing():
    previous = 0.0
    for i in range(1, 40):
        p = pressure_under_suction(MODEL, 0.0, i * 0.025)
        assert p < previous
        previous = p
    assert previous > MODEL.vacuum_kpa  # asymptote never crossed


def test_vent_pressure_monotone_rising_to_zero():
    p0 = MODEL.vacuum_kpa
    previous = p0
    for i in range(1, 9):
        p = pressure_while_venting(p0, i * 0.025, MODEL.vent_s)
        assert p >= previous
        previous = p
    assert pressure_while_venting(p0, MODEL.vent_s, MODEL.vent_s) == 0.0


def test_equilibrium_is_fixed_point():
    p_eq = MODEL.equilibrium_kpa
    assert pressure_under_suction(MODEL, p_eq, 1.234) == p_eq


# --- holding capacity -----------------------------------------------------

def test_holding_capacity_hand_values():
    # 3 cups at -50 kPa over 1000 mm^2 with mu = 0.5:
    # 50 kPa * 1000 mm^2 = 50 N per cup
    model = AdhesionModel(cup_area_mm2=1000.0)
    state = attached_state(model, legs=(1, 2, 3))
    normal, tangential = holding_capacity(state, model)
    assert normal == 150.0
    assert tangential == 75.0


def test_holding_capacity_empty():
    assert holding_capacity(PneumaticState.initial(), MODEL) == (0.0, 0.0)


def test_holding_capacity_linearity():
    model = AdhesionModel(cup_area_mm2=1000.0)
    three = holding_capacity(attached_state(model, legs=(1, 2, 3)), model)
    four = holding_capacity(attached_state(model), model)
    assert four[0] / three[0] == 4.0 / 3.0
    assert four[1] / three[1] == 4.0 / 3.0
    # linear in vacuum depth as well
    deeper = attached_state(model, pressure=2 * model.vacuum_kpa)
    assert holding_capacity(deeper, model)[0] == 2.0 * four[0]


# --- structural invariants ------------------------------------------------

def test_never_attached_with_vent_or_pump_off():
    state = attached_state()
    assert state.attached_legs(MODEL) == [1, 2, 3, 4]
    # venting the valve clears attachment immediately, pressure regardless
    vented = state.with_valve(1, Valve.VENT)
    assert not vented.is_attached(1, MODEL)
    # pump off drops both of its legs
    dead = state.with_pump("B", False)
    assert dead.attached_legs(MODEL) == [1, 2]


def test_random_interleavings_preserve_invariant():
    rng = random.Random(42)
    state = PneumaticState.initial()
    for _ in range(500):
        op = rng.randrange(4)
        leg = rng.choice((1, 2, 3, 4))
        pump = rng.choice(("A", "B"))
        try:
            if op == 0:
                _, state = attach_sequence(state, leg, MODEL)
            elif op == 1:
                _, state = detach_sequence(state, leg, MODEL)
            elif op == 2:
                state = state.with_pump(pump, True)
            else:
                state = state.with_pump(pump, False)
        except (PumpOff, NotAttached, ValueError):
            pass
        for check in (1, 2, 3, 4):
            if state.valve[check] is Valve.VENT or not state.pump_running(check):
                assert not state.is_attached(check, MODEL)
            assert state.pressure_kpa[check] <= 0.0


def test_suction_count_within_pump_assignment():
    state = attached_state()
    for pump, legs in (("A", (1, 2)), ("B", (3, 4))):
        assert state.suction_count(pump) <= len(legs)


def test_custom_pump_assignment():
    state = PneumaticState.initial({"A": (1, 2, 3), "B": (4,)})
    assert state.pump_of_leg[3] == "A"
    with pytest.raises(ValueError):
        PneumaticState.initial({"A": (1, 2), "B": (2, 3)})


# --- model validation -----------------------------------------------------

def test_model_invariants():
    with pytest.raises(ValueError):
        AdhesionModel(cup_area_mm2=0.0)
    with pytest.raises(ValueError):
        AdhesionModel(vacuum_kpa=-20.0, attach_threshold_kpa=-30.0)
    with pytest.raises(ValueError):
        AdhesionModel(attach_threshold_kpa=5.0)
    with pytest.raises(ValueError):
        AdhesionModel(dwell_s=0.0)
    with pytest.raises(ValueError):
        AdhesionModel(friction=2.5)
    with pytest.raises(ValueError):
        AdhesionModel(leak_kpa_per_s=-1.0)
