"""Structural audit of a compiled workspace: cell size, wall thickness, doorways and edge-robot slots.

Lengths are counted in pixels (half-units) on the ray-cast obstacle raster
and reported in units.
"""

from nclrobots.gadgets import EDGE

import oracles

CELL_UNITS = 5.0
WALL_UNITS = 0.5
DOOR_UNITS = 1.0
PROTRUSION_UNITS = 0.5


def _wall_pixels(x0, y0, side):
    if side == "E":
        return [(x0 + 11, y0 + 1 + j) for j in range(10)]
    if side == "W":
        return [(x0, y0 + 1 + j) for j in range(10)]
    if side == "N":
        return [(x0 + 1 + i, y0 + 11) for i in range(10)]
    return [(x0 + 1 + i, y0) for i in range(10)]


def geometry_violations(asm) -> list[str]:
    blocked = oracles.blocked_pixels(asm.instance)
    m = asm.margin
    out = []
    cells = asm.gadget_at
    for (cx, cy), g in cells.items():
        x0, y0 = 11 * cx + m, 11 * cy + m
        # the four wall lines are blocked at the corners and the interior between them is 10 pixels
        for corner in ((x0, y0), (x0 + 11, y0), (x0, y0 + 11), (x0 + 11, y0 + 11)):
            if corner not in blocked:
                out.append(f"cell {(cx, cy)}: wall corner {corner} open")
        interior = [(x0 + 1 + i, y0 + 1 + j) for i in range(10) for j in range(10)]
        if len(interior) != (2 * CELL_UNITS) ** 2:
            out.append(f"cell {(cx, cy)}: interior is not {CELL_UNITS} units square")
        for side in ("N", "E", "S", "W"):
            gaps = [p for p in _wall_pixels(x0, y0, side) if p not in blocked]
            if side in g.port_weights:
                if len(gaps) != 2 * DOOR_UNITS:
                    out.append(f"cell {(cx, cy)} {side}: doorway {len(gaps) / 2} units")
            elif gaps:
                out.append(f"cell {(cx, cy)} {side}: {len(gaps)} open wall pixels without a port")
            # walls are one pixel thick: the pixels just inside and outside the wall line are not wall
            if side == "W":
                beside = [(x0 - 1, y0 + 5), (x0 + 1, y0 + 5)]
            elif side == "E":
                beside = [(x0 + 10, y0 + 5), (x0 + 12, y0 + 5)]
            elif side == "S":
                beside = [(x0 + 5, y0 - 1), (x0 + 5, y0 + 1)]
            else:
                beside = [(x0 + 5, y0 + 10), (x0 + 5, y0 + 12)]
            if side in g.port_weights and any(p in blocked for p in beside):
                out.append(f"cell {(cx, cy)} {side}: wall thicker than {WALL_UNITS} units at the doorway")
    wall_x = {11 * c[0] + m for c in cells} | {11 * (c[0] + 1) + m for c in cells}
    wall_y = {11 * c[1] + m for c in cells} | {11 * (c[1] + 1) + m for c in cells}
    for r in asm.robots:
        if r.role != EDGE:
            continue
        (ax, ay), (bx, by) = r.positions
        if abs(ax - bx) + abs(ay - by) != 1:
            out.append(f"{r.name}: slots are not one half-step apart")
            continue
        # centres c and c+1 straddle the wall pixel c; each square covers the wall plus one pixel beyond
        if ax != bx:
            line, walls = min(ax, bx), wall_x
            span = [(min(ax, bx) - 1, ay), (max(ax, bx), ay)]
        else:
            line, walls = min(ay, by), wall_y
            span = [(ax, min(ay, by) - 1), (ax, max(ay, by))]
        if line not in walls:
            out.append(f"{r.name}: slots do not straddle a wall line")
            continue
        if any(p in blocked for p in span):
            out.append(f"{r.name}: slot squares do not reach {PROTRUSION_UNITS} units past the wall")
    return out
