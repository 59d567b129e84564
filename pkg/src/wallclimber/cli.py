"""Command-line front end.

Subcommands: ik, fk, gait, simulate, sweep, validate-config. Angles on
the command line and in files are degrees; lengths are mm. The config
file is taken from --config, then the WALLCLIMBER_CONFIG environment
variable, then built-in defaults.

Exit codes: 0 success, 2 usage error, 3 validation error (bad config,
unreachable target, invalid gait), 4 simulation failure.
"""

import argparse
import math
import sys

from . import fileio
from .config import CONFIG_ENV_VAR, load_config, resolve_config_path
from .errors import ClimberError, ConfigError
from .gait import FootholdMap, compile_joint_table, generate_cycle
from .kinematics import CupTarget, ElbowBranch, fk_leg, fk_normal_z, fk_planar_xy, solve_leg
from .simulator import run_scenario, sweep_climb_angle

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_SIMFAIL = 4


def _fail(message, code):
    print(message, file=sys.stderr)
    return code


def _load(args):
    return load_config(resolve_config_path(args.config))


def _cmd_ik(args):
    config = _load(args)
    branch = ElbowBranch[args.branch.upper()]
    target = CupTarget(args.x, args.y, args.z, math.radians(args.k))
    angles = solve_leg(config.geometry, target, branch, config.limits)
    print(" ".join(f"{math.degrees(t):.6f}" for t in angles.as_tuple()))
    echo = fk_leg(config.geometry, angles)
    print(f"fk: x={echo.x:.6f} y={echo.y:.6f} z={echo.z:.6f} k={math.degrees(echo.k):.6f}")
    return EXIT_OK


def _cmd_fk(args):
    config = _load(args)
    t1, t2, t3, t4 = (math.radians(v) for v in (args.theta1, args.theta2,
                                                args.theta3, args.theta4))
    x, y = fk_planar_xy(config.geometry, t1, t2)
    z, k = fk_normal_z(config.geometry, t3, t4)
    print(f"{x:.6f} {y:.6f} {z:.6f} {math.degrees(k):.6f}")
    return EXIT_OK


def _cmd_gait(args):
    config = _load(args)
    gait = config.gait
    footholds = FootholdMap.from_mm(gait.stance_mm)
    script = generate_cycle(
        config.geometry, footholds, gait.step_length_mm, gait.order,
        z_mm=gait.z_mm, k_rad=gait.k_rad, lift_mm=gait.lift_mm,
        advance_mode=gait.advance_mode, branch=gait.branch, limits=config.limits,
    )
    rows = compile_joint_table(
        script, config.geometry, gait.z_mm, gait.k_rad, gait.samples_per_step,
        step_duration_s=gait.swing_s + gait.advance_s, limits=config.limits,
    )
    fileio.write_joint_table(args.out, rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def _summary_line(report):
    return (f"angle={report.climb_angle_deg:g} "
            f"speed={report.average_speed_mm_s:.6f} "
            f"power={report.average_power_w:.6f} "
            f"completed={'true' if report.completed else 'false'}")


def _cmd_simulate(args):
    config = _load(args)
    report = run_scenario(config)
    summary_path = f"{args.out}.summary.json"
    series_path = f"{args.out}.series.csv"
    fileio.write_summary_json(summary_path, report)
    fileio.write_series_csv(series_path, report)
    print(_summary_line(report))
    if not report.completed:
        return _fail(f"simulation failed at tick {report.failure_tick}: "
                     f"{report.failure_reason}", EXIT_SIMFAIL)
    return EXIT_OK


def _cmd_sweep(args):
    for angle in args.angles:
        if not 0.0 <= angle <= 90.0:
            return _fail(f"usage error: climb angle {angle:g} outside [0, 90] deg",
                         EXIT_USAGE)
    config = _load(args)
    rows = sweep_climb_angle(config, args.angles)
    fileio.write_sweep_csv(args.out, rows)
    for row in rows:
        print(f"angle={row.angle_deg:g} speed={row.avg_speed_mm_s:.6f} "
              f"power={row.avg_power_w:.6f} "
              f"completed={'true' if row.completed else 'false'}")
    print(f"wrote {args.out}")
    if not any(row.completed for row in rows):
        return _fail("no climb angle completed", EXIT_SIMFAIL)
    return EXIT_OK


def _cmd_validate_config(args):
    path = resolve_config_path(args.config)
    config = load_config(path)
    source = path if path is not None else "built-in defaults"
    print(f"config ok ({source})")
    geom = config.geometry
    print(f"  geometry: a1={geom.a1} a2={geom.a2} a3={geom.a3} a4={geom.a4} mm")
    if config.limits is not None:
        print(f"  joint limits: [{math.degrees(config.limits.lower):g}, "
              f"{math.degrees(config.limits.upper):g}] deg")
    else:
        print("  joint limits: unset (not enforced)")
    gait = config.gait
    print(f"  gait: step={gait.step_length_mm} mm order={gait.order} "
          f"lift={gait.lift_mm} mm z={gait.z_mm} mm k={math.degrees(gait.k_rad):g} deg "
          f"mode={gait.advance_mode}")
    print(f"  adhesion: vacuum={config.adhesion.vacuum_kpa} kPa "
          f"threshold={config.adhesion.attach_threshold_kpa} kPa "
          f"area={config.adhesion.cup_area_mm2} mm^2 mu={config.adhesion.friction}")
    print(f"  scenario: angle={config.climb_angle_deg:g} deg mass={config.mass_kg} kg "
          f"cycles={config.cycles} tick={config.tick_s} s seed={config.seed}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wallclimber",
        description="Simulation toolkit for a four-legged suction-cup wall climber.",
    )
    parser.add_argument("--config", metavar="PATH", default=None,
                        help=f"config file (default: ${CONFIG_ENV_VAR} or built-in defaults)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ik", help="solve one leg for a cup target")
    p.add_argument("x", type=float, help="contact point x, mm")
    p.add_argument("y", type=float, help="contact point y, mm")
    p.add_argument("z", type=float, help="wall clearance, mm")
    p.add_argument("k", type=float, help="cup approach angle, deg")
    p.add_argument("branch", nargs="?", choices=("plus", "minus"), default="plus",
                   help="elbow branch (default plus)")
    p.set_defaults(func=_cmd_ik)

    p = sub.add_parser("fk", help="forward kinematics for four joint angles (deg)")
    for name in ("theta1", "theta2", "theta3", "theta4"):
        p.add_argument(name, type=float)
    p.set_defaults(func=_cmd_fk)

    p = sub.add_parser("gait", help="compile the climbing cycle to a joint-angle CSV")
    p.add_argument("-o", "--out", default="joint_table.csv", help="output CSV path")
    p.set_defaults(func=_cmd_gait)

    p = sub.add_parser("simulate", help="run one scenario; writes summary JSON and series CSV")
    p.add_argument("-o", "--out", default="sim", help="output path prefix")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="run the scenario across climb angles")
    p.add_argument("angles", nargs="*", type=float,
                   default=[0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0],
                   help="climb angles in degrees (default 0..90 by 15)")
    p.add_argument("-o", "--out", default="sweep.csv", help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("validate-config", help="load and validate the config, print a summary")
    p.set_defaults(func=_cmd_validate_config)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        return _fail(f"config error: {exc}", EXIT_VALIDATION)
    except ClimberError as exc:
        return _fail(f"error: {type(exc).__name__}: {exc}", EXIT_VALIDATION)
    except ValueError as exc:
        return _fail(f"error: {exc}", EXIT_VALIDATION)


def run():
    sys.exit(main())
