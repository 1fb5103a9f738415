"""Deterministic SVG pictures of instances, configurations and plans."""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .motion import Instance, PathPlan, Point, replay_plan

SCALE = 10  # pixels per half-unit

COLORS = {
    "obstacle": "#9e9e9e",
    "edge": "#f28e2b",
    "vertex": "#4e79a7",
    "special": "#59a14f",
    "robot": "#4e79a7",
    "point": "#e15759",
    "terminal": "#bab0ac",
}


def _y(inst: Instance, y: float) -> float:
    return (inst.height - y) * SCALE


def _poly(inst: Instance, poly: Sequence[Point]) -> str:
    pts = " ".join(f"{x * SCALE},{_y(inst, y):g}" for x, y in poly)
    return f'<polygon points="{pts}" fill="{COLORS["obstacle"]}"/>'


def _square(inst: Instance, c: Point, fill: str, opacity: str = "1") -> str:
    x, y = c
    return (f'<rect x="{(x - 1) * SCALE}" y="{_y(inst, y + 1):g}" width="{2 * SCALE}" '
            f'height="{2 * SCALE}" fill="{fill}" fill-opacity="{opacity}" stroke="black" stroke-width="1"/>')


def render_svg(inst: Instance, config: Optional[Sequence[Point]] = None,
               roles: Optional[Mapping[Point, str]] = None,
               terminals: Sequence[Point] = (),
               plan: Optional[PathPlan] = None, frame: Optional[int] = None) -> str:
    """One SVG document. With ``plan`` and ``frame``, draws that frame of the
    plan replayed from ``config``; ``roles`` maps positions to
    ``edge``/``vertex``/``special`` for colouring."""
    if plan is not None:
        if config is None:
            raise ValueError("a plan needs its start configuration")
        frames = replay_plan(inst, config, plan)
        if frame is None:
            frame = len(frames) - 1
        if not 0 <= frame < len(frames):
            raise IndexError(f"frame {frame} out of range 0..{len(frames) - 1}")
        config = frames[frame]
    elif frame is not None:
        raise ValueError("a frame index needs a plan")
    w, h = inst.width * SCALE, inst.height * SCALE
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">',
           f'<rect x="0" y="0" width="{w}" height="{h}" fill="white" stroke="black" stroke-width="2"/>']
    out += [_poly(inst, p) for p in inst.obstacles]
    for x, y in sorted(terminals):
        out.append(f'<circle cx="{x * SCALE}" cy="{_y(inst, y):g}" r="1.5" fill="{COLORS["terminal"]}"/>')
    for c in sorted(config or ()):
        role = (roles or {}).get(tuple(c), "robot")
        out.append(_square(inst, tuple(c), COLORS.get(role, COLORS["robot"]), "0.8"))
    for x, y in inst.points:
        out.append(f'<circle cx="{x * SCALE}" cy="{_y(inst, y):g}" r="3" fill="{COLORS["point"]}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_plan(inst: Instance, start: Sequence[Point], plan: PathPlan,
                roles: Optional[Mapping[Point, str]] = None) -> list[str]:
    """One SVG per frame: ``len(plan) + 1`` documents."""
    frames = replay_plan(inst, start, plan)
    return [render_svg(inst, f, roles) for f in frames]
