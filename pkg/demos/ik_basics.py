#!/usr/bin/env python3
"""Walk through the leg solver: decoupled planes, elbow branches,
round trips, and what happens at the edge of the workspace.

Usage: python demos/ik_basics.py
"""

import math

from wallclimber import (
    CupTarget,
    ElbowBranch,
    LegGeometry,
    fk_leg,
    fk_planar_xy,
    ik_planar_xy,
    reachable,
    solve_leg,
)
from wallclimber.errors import OutOfReach


def deg(rad):
    return math.degrees(rad)


def main():
    geom = LegGeometry()  # 100 mm links everywhere
    print("=" * 60)
    print("Leg geometry:", geom)
    print("xy reach annulus:", geom.xy_reach, "mm")

    print("\n--- a few targets, both elbow branches ---")
    for x, y in [(200.0, 0.0), (100.0, 100.0), (150.0, -40.0), (-120.0, 60.0)]:
        for branch in ElbowBranch:
            t1, t2 = ik_planar_xy(geom, x, y, branch)
            fx, fy = fk_planar_xy(geom, t1, t2)
            print(f"  ({x:7.1f},{y:7.1f}) {branch.name:5s} -> "
                  f"theta1={deg(t1):8.3f} deg  theta2={deg(t2):8.3f} deg  "
                  f"fk=({fx:.6f},{fy:.6f})")

    print("\n--- full 4-DOF solve: contact point + clearance + approach ---")
    target = CupTarget(x=150.0, y=40.0, z=100.0, k=math.pi / 2)
    angles = solve_leg(geom, target)
    print("  target:", target)
    print("  angles (deg):", [round(deg(t), 3) for t in angles.as_tuple()])
    echo = fk_leg(geom, angles)
    print("  fk echo:", echo)
    print("  approach angle recomposes exactly:", angles.theta3 + angles.theta4 == target.k)

    print("\n--- changing clearance never touches the xy joints ---")
    near = solve_leg(geom, CupTarget(150.0, 40.0, 60.0, math.pi / 2))
    print("  z=100:", round(deg(angles.theta1), 3), round(deg(angles.theta2), 3),
          "| z=60:", round(deg(near.theta1), 3), round(deg(near.theta2), 3),
          "(identical xy pair)")

    print("\n--- workspace edges ---")
    try:
        ik_planar_xy(geom, 300.0, 0.0)
    except OutOfReach as exc:
        print("  (300, 0):", exc)
    print("  (200, 0) full extension: theta2 =",
          deg(ik_planar_xy(geom, 200.0, 0.0)[1]), "deg")
    ok, reason = reachable(geom, CupTarget(150.0, 0.0, 250.0, math.pi / 2))
    print("  z=250 at k=90 deg reachable?", ok, "->", reason)
    print("=" * 60)


if __name__ == "__main__":
    main()
