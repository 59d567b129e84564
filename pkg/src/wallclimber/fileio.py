"""CSV/JSON writers and the matching parsers.

Files are bit-reproducible: floats are written with repr (shortest
round-trip form), lines end with LF, headers are mandatory, and JSON
keys are sorted. Angles are degrees in files, radians in memory.
"""

import csv
import json
import math
from dataclasses import dataclass

from .gait import LEG_IDS

JOINT_TABLE_HEADER = ["t_s", "leg", "theta1_deg", "theta2_deg", "theta3_deg",
                      "theta4_deg", "attached"]

SWEEP_HEADER = ["angle_deg", "avg_speed_mm_s", "avg_power_w", "completed"]


def _fmt(value):
    return repr(float(value))


def _open_w(path):
    return open(path, "w", encoding="utf-8", newline="")


def write_joint_table(path, rows):
    """Write compiled gait rows; angles converted to degrees."""
    with _open_w(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(JOINT_TABLE_HEADER)
        for row in rows:
            writer.writerow([
                _fmt(row.t_s),
                row.leg,
                _fmt(math.degrees(row.angles.theta1)),
                _fmt(math.degrees(row.angles.theta2)),
                _fmt(math.degrees(row.angles.theta3)),
                _fmt(math.degrees(row.angles.theta4)),
                1 if row.attached else 0,
            ])


@dataclass(frozen=True)
class JointTableFileRow:
    t_s: float
    leg: int
    theta_deg: tuple
    attached: bool


def read_joint_table(path):
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != JOINT_TABLE_HEADER:
            raise ValueError(f"unexpected joint table header {header}")
        return [
            JointTableFileRow(
                t_s=float(rec[0]),
                leg=int(rec[1]),
                theta_deg=(float(rec[2]), float(rec[3]), float(rec[4]), float(rec[5])),
                attached=rec[6] == "1",
            )
            for rec in reader
        ]


def series_header():
    cols = ["t_s", "body_mm"]
    for leg in LEG_IDS:
        cols += [f"leg{leg}_theta1_deg", f"leg{leg}_theta2_deg",
                 f"leg{leg}_theta3_deg", f"leg{leg}_theta4_deg",
                 f"leg{leg}_valve", f"leg{leg}_pressure_kpa", f"leg{leg}_attached"]
    cols += ["power_w", "slip"]
    return cols


def write_series_csv(path, report):
    """Write the per-tick time series of a SimReport."""
    with _open_w(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(series_header())
        for rec in report.records:
            row = [_fmt(rec.t_s), _fmt(rec.body_mm)]
            for leg in LEG_IDS:
                angles = rec.angles[leg]
                row += [
                    _fmt(math.degrees(angles.theta1)),
                    _fmt(math.degrees(angles.theta2)),
                    _fmt(math.degrees(angles.theta3)),
                    _fmt(math.degrees(angles.theta4)),
                    rec.valve[leg].value,
                    _fmt(rec.pressure_kpa[leg]),
                    1 if rec.attached[leg] else 0,
                ]
            row += [_fmt(rec.power_w), _fmt(rec.slip)]
            writer.writerow(row)


def read_series_csv(path):
    """Parse a series file back into a list of per-tick dicts (file units:
    degrees, mm, kPa). Valve columns stay strings, attached become bools."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != series_header():
            raise ValueError(f"unexpected series header {header}")
        rows = []
        for rec in reader:
            parsed = {}
            for name, value in zip(header, rec):
                if name.endswith("_valve"):
                    parsed[name] = value
                elif name.endswith("_attached"):
                    parsed[name] = value == "1"
                else:
                    parsed[name] = float(value)
            rows.append(parsed)
        return rows


def summary_dict(report):
    return {
        "angle_deg": report.climb_angle_deg,
        "cycles": report.cycles,
        "tick_s": report.tick_s,
        "ticks": len(report.records),
        "duration_s": report.duration_s,
        "displacement_mm": report.displacement_mm,
        "avg_speed_mm_s": report.average_speed_mm_s,
        "avg_power_w": report.average_power_w,
        "total_energy_j": report.total_energy_j,
        "slip_count": report.slip_count,
        "completed": report.completed,
        "failure_tick": report.failure_tick,
        "failure_reason": report.failure_reason,
    }


def write_summary_json(path, report):
    with _open_w(path) as handle:
        json.dump(summary_dict(report), handle, sort_keys=True, indent=2)
        handle.write("\n")


def read_summary_json(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


EVENTS_HEADER = ["t_s", "leg", "valve", "pressure_kpa", "attached"]


def write_events_csv(path, events):
    """Write attach/detach event lists in the trace-log layout."""
    with _open_w(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(EVENTS_HEADER)
        for event in events:
            writer.writerow([
                _fmt(event.t_s),
                event.leg,
                event.valve.value,
                _fmt(event.pressure_kpa),
                1 if event.attached else 0,
            ])


def read_events_csv(path):
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != EVENTS_HEADER:
            raise ValueError(f"unexpected events header {header}")
        return [
            (float(rec[0]), int(rec[1]), rec[2], float(rec[3]), rec[4] == "1")
            for rec in reader
        ]


def write_sweep_csv(path, rows):
    with _open_w(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow([
                _fmt(row.angle_deg),
                _fmt(row.avg_speed_mm_s),
                _fmt(row.avg_power_w),
                "true" if row.completed else "false",
            ])


def read_sweep_csv(path):
    """Parse a sweep table back into (angle, speed, power, completed) tuples."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != SWEEP_HEADER:
            raise ValueError(f"unexpected sweep header {header}")
        return [
            (float(rec[0]), float(rec[1]), float(rec[2]), rec[3] == "true")
            for rec in reader
        ]
