#!/usr/bin/env python3
"""Brute-force reconstruction of the three-agent intersection fixture.

The intersection case study is described only qualitatively: agents 1 and 2
approach a crossing from the left along a horizontal road, agent 3 from above
along a vertical road, MdR all-stay, with five instances

    a: (R2, S0, D2)   no collisions
    b: (R4, S0, D2)   1 rear-ends 2
    c: (R4, R1, D2)   no collisions
    d: (R4, R2, D2)   2 T-bones 3
    e: (R4, R2, S0)   no collisions

and reported values fear(1,2) = 0.3/0.7/0.7/0.7/0.4, fear(3,2) =
0.4/0.6/0.6/0.6/0.0, fear(2,1) = -0.2 in c, fear(2,3) = 0.2 in d and e.

No geometry can reproduce every value to 5e-3: fear(1,2)=0.3 in (a) forces
integer counts (10, 7) (the only p/q with q <= 17 within 5e-3 of 0.3), and
then fear(3,2) = (q-7)/q = 0.4 has no integer solution (7/0.6 = 11.67). The
reported values are one-decimal prints, so this search instead requires every
value to match at print precision (exact for the structural zeros) and ranks
candidates by worst-case deviation.

The search space is straight crossing roads: a full-width horizontal band of
1-3 rows and a full-height vertical band of 1-3 columns. The collision
pattern alone forces x2 - x1 = 4, agent 3's column = x2 + 2, and agent 3 two
rows above the agents' row; everything else is enumerated.

Run with --emit to rewrite src/fear/fixtures/case3[a-e].json from the best
geometry found.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from fear.engine import simulate
from fear.grid import Action, AgentSet, GridMap, Scenario
from fear.metric import fear_matrix

A = Action.parse
INSTANCES = {
    "a": ("R2", "S0", "D2"),
    "b": ("R4", "S0", "D2"),
    "c": ("R4", "R1", "D2"),
    "d": ("R4", "R2", "D2"),
    "e": ("R4", "R2", "S0"),
}
COLLIDERS = {
    "a": frozenset(),
    "b": frozenset({1, 2}),
    "c": frozenset(),
    "d": frozenset({2, 3}),
    "e": frozenset(),
}
REPORTED = {
    ("a", 1, 2): 0.3,
    ("b", 1, 2): 0.7,
    ("c", 1, 2): 0.7,
    ("d", 1, 2): 0.7,
    ("e", 1, 2): 0.4,
    ("a", 3, 2): 0.4,
    ("b", 3, 2): 0.6,
    ("c", 3, 2): 0.6,
    ("d", 3, 2): 0.6,
    ("e", 3, 2): 0.0,
    ("a", 2, 1): 0.0,
    ("b", 2, 1): 0.0,
    ("c", 2, 1): -0.2,
    ("a", 2, 3): 0.0,
    ("b", 2, 3): 0.0,
    ("c", 2, 3): 0.0,
    ("d", 2, 3): 0.2,
    ("e", 2, 3): 0.2,
}


def crossing(width: int, height: int, hrow: int, hband: int, vcol: int, vband: int) -> GridMap:
    cells = {(x, y) for x in range(width) for y in range(hrow, hrow + hband)}
    cells |= {(x, y) for x in range(vcol, vcol + vband) for y in range(height)}
    return GridMap(width, height, frozenset(cells))


def matches_print(value: float, reported: float) -> bool:
    if reported == 0.0:
        return value == 0.0
    return abs(value - reported) <= 0.05


def evaluate_candidate(grid: GridMap, origins) -> dict | None:
    agents = AgentSet.from_origins(origins)
    mdr = {1: A("S0"), 2: A("S0"), 3: A("S0")}
    values: dict[tuple, float] = {}
    for tag, codes in INSTANCES.items():
        joint = {i + 1: A(c) for i, c in enumerate(codes)}
        resolution = simulate(grid, agents, joint)
        involved = frozenset(a for e in resolution.events for a in e.participants)
        if involved != COLLIDERS[tag]:
            return None
        matrix = fear_matrix(Scenario(grid, agents, joint, mdr))
        for (t, i, j), reported in REPORTED.items():
            if t == tag:
                value = matrix.value(i, j)
                if not matches_print(value, reported):
                    return None
                values[(t, i, j)] = value
    return values


def search() -> list[tuple]:
    hits = []
    for hband in (1, 2, 3):
        for vband in (1, 2, 3):
            for width in range(7, 15):
                for height in range(3, 11):
                    for hrow in range(0, height - hband + 1):
                        for row in range(max(hrow, 2), hrow + hband):
                            y3 = row - 2
                            for vcol in range(0, width - vband + 1):
                                for col3 in range(vcol, vcol + vband):
                                    x2 = col3 - 2
                                    x1 = x2 - 4
                                    if x1 < 0:
                                        continue
                                    grid = crossing(width, height, hrow, hband, vcol, vband)
                                    origins = [(x1, row), (x2, row), (col3, y3)]
                                    if any(o not in grid.valid for o in origins):
                                        continue
                                    values = evaluate_candidate(grid, origins)
                                    if values is None:
                                        continue
                                    deviation = max(
                                        abs(values[k] - r) for k, r in REPORTED.items()
                                    )
                                    hits.append((deviation, grid, origins, values))
    # deterministic tie-break: lowest deviation, then the geometry closest to
    # the other case studies' lane width of 10, then the smallest map
    hits.sort(
        key=lambda h: (
            h[0],
            abs(h[1].width - 10),
            h[1].height,
            h[2][2][0],  # vertical road column
            h[2][0],
        )
    )
    return hits


def emit(grid: GridMap, origins) -> None:
    root = pathlib.Path(__file__).resolve().parent.parent / "src" / "fear" / "fixtures"
    invalid = [list(c) for c in grid.invalid_cells]
    for tag, codes in INSTANCES.items():
        doc = {
            "format_version": 1,
            "grid": {"width": grid.width, "height": grid.height, "invalid_cells": invalid},
            "agents": [
                {"id": i + 1, "x": x, "y": y} for i, (x, y) in enumerate(origins)
            ],
            "actions": {str(i + 1): c for i, c in enumerate(codes)},
            "mdr": {"1": "S0", "2": "S0", "3": "S0"},
        }
        path = root / f"case3{tag}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {path}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--emit", action="store_true", help="rewrite the case3 fixture files")
    parser.add_argument("--top", type=int, default=3, help="how many candidates to print")
    args = parser.parse_args()

    hits = search()
    if not hits:
        print("no geometry matches at print precision")
        return 1
    print(f"{len(hits)} matching geometries; best {args.top}:")
    for deviation, grid, origins, values in hits[: args.top]:
        print(
            f"  dev={deviation:.4f} {grid.width}x{grid.height} agents={origins} "
            f"(valid cells: {len(grid.valid)})"
        )
        for tag in INSTANCES:
            row = "  ".join(
                f"{i},{j}={values[(tag, i, j)]:+.3f}"
                for (t, i, j) in REPORTED
                if t == tag
            )
            print(f"    {tag}: {row}")
    if args.emit:
        emit(hits[0][1], hits[0][2])
    return 0


if __name__ == "__main__":
    sys.exit(main())
