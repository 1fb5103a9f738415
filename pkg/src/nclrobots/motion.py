"""Exact discrete motion planning for unit-square robots.

All coordinates are integers in half-units. A robot centred at ``(x, y)``
covers the closed square ``[x-1, x+1] x [y-1, y+1]``; it moves one half-step
at a time along an axis. Robots and obstacles may touch but not overlap.
Pixels are the half-unit squares ``[i, i+1] x [j, j+1]``.

The solvers decide the *discrete* problems (one robot, one half-step per
move); they make no claim about simultaneous continuous motion on
arbitrary instances.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

Point = tuple[int, int]

DIRS: dict[str, Point] = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
DIR_ORDER = ("N", "E", "S", "W")

DEFAULT_STATE_CAP = 3_000_000


class Inconclusive(RuntimeError):
    """A search hit its state cap before deciding."""


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    width: int
    height: int
    robots: int
    obstacles: tuple[tuple[Point, ...], ...] = ()
    points: tuple[Point, ...] = ()

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise InstanceError("bounds must be positive")
        if self.robots <= 0:
            raise InstanceError("robot count must be positive")
        polys = tuple(tuple((int(x), int(y)) for x, y in p) for p in self.obstacles)
        for p in polys:
            _check_rectilinear(p)
        object.__setattr__(self, "obstacles", polys)
        object.__setattr__(self, "points", tuple(sorted((int(x), int(y)) for x, y in self.points)))


def _check_rectilinear(poly: tuple[Point, ...]):
    if len(poly) < 4 or len(poly) % 2:
        raise InstanceError(f"polygon {poly} needs an even number (>= 4) of vertices")
    for a, b in zip(poly, poly[1:] + poly[:1]):
        if a == b or (a[0] != b[0] and a[1] != b[1]):
            raise InstanceError(f"polygon {poly} is not rectilinear at {a}->{b}")
    area2 = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(poly, poly[1:] + poly[:1]))
    if area2 == 0:
        raise InstanceError(f"polygon {poly} is degenerate")


def rect(x0: int, y0: int, x1: int, y1: int) -> tuple[Point, ...]:
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


def _pixels_in_polygon(poly: tuple[Point, ...]) -> Iterable[Point]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    vertical = [(a[0], min(a[1], b[1]), max(a[1], b[1]))
                for a, b in zip(poly, poly[1:] + poly[:1]) if a[0] == b[0]]
    for j in range(min(ys), max(ys)):
        # even-odd crossing count of the ray from the pixel centre towards +x
        crossings = sorted(x for x, lo, hi in vertical if lo <= j < hi)
        for k in range(0, len(crossings) - 1, 2):
            for i in range(crossings[k], crossings[k + 1]):
                yield (i, j)


class Workspace:
    """Rasterised free space of an instance plus the lattice move graph."""

    def __init__(self, inst: Instance):
        self.inst = inst
        w, h = inst.width, inst.height
        blocked = bytearray(w * h)
        for poly in inst.obstacles:
            for i, j in _pixels_in_polygon(poly):
                if 0 <= i < w and 0 <= j < h:
                    blocked[j * w + i] = 1
        self.blocked = blocked
        self.point_set = frozenset(inst.points)
        centers = [(x, y) for y in range(1, h) for x in range(1, w) if self._square_free(x, y)]
        self.centers: list[Point] = centers
        self.index: dict[Point, int] = {c: k for k, c in enumerate(centers)}
        self.overlap: list[int] = []
        for (x, y) in centers:
            mask = 0
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    k = self.index.get((x + dx, y + dy))
                    if k is not None:
                        mask |= 1 << k
            self.overlap.append(mask)
        # per centre: (direction, target index, mask of centres blocking the move)
        self.moves: list[list[tuple[str, int, int]]] = []
        for k, (x, y) in enumerate(centers):
            out = []
            for d in DIR_ORDER:
                dx, dy = DIRS[d]
                t = self.index.get((x + dx, y + dy))
                if t is not None and self.swept_free((x, y), d):
                    out.append((d, t, self.overlap[t] & ~self.overlap[k]))
            self.moves.append(out)

    def pixel_blocked(self, i: int, j: int) -> bool:
        w, h = self.inst.width, self.inst.height
        return not (0 <= i < w and 0 <= j < h) or bool(self.blocked[j * w + i])

    def _rect_free(self, x0: int, y0: int, x1: int, y1: int) -> bool:
        for j in range(y0, y1):
            for i in range(x0, x1):
                if self.pixel_blocked(i, j):
                    return False
        for px, py in self.point_set:
            if x0 < px < x1 and y0 < py < y1:
                return False
        return True

    def _square_free(self, x: int, y: int) -> bool:
        return self._rect_free(x - 1, y - 1, x + 1, y + 1)

    def square_free(self, c: Point) -> bool:
        return self._square_free(*c)

    def swept_free(self, c: Point, d: str) -> bool:
        """Whether the 1 x 1.5 rectangle swept by a half-step avoids obstacles."""
        x, y = c
        dx, dy = DIRS[d]
        return self._rect_free(min(x, x + dx) - 1, min(y, y + dy) - 1,
                               max(x, x + dx) + 1, max(y, y + dy) + 1)

    def encode(self, config: Iterable[Point]) -> int:
        mask = 0
        for c in config:
            mask |= 1 << self.index[c]
        return mask

    def decode(self, mask: int) -> tuple[Point, ...]:
        return tuple(sorted(self.centers[k] for k in _bits(mask)))


@functools.lru_cache(maxsize=64)
def workspace(inst: Instance) -> Workspace:
    return Workspace(inst)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def squares_overlap(a: Point, b: Point) -> bool:
    return abs(a[0] - b[0]) < 2 and abs(a[1] - b[1]) < 2


def is_free(inst: Instance, config: Sequence[Point]) -> bool:
    if len(config) != inst.robots:
        raise ValueError(f"expected {inst.robots} robots, got {len(config)}")
    ws = workspace(inst)
    if not all(ws.square_free(c) for c in config):
        return False
    return not any(squares_overlap(a, b) for a, b in itertools.combinations(config, 2))


def _require_free(inst: Instance, config: Sequence[Point], what: str):
    if not is_free(inst, config):
        raise ValueError(f"{what} multi-configuration is not free")


def legal_single_moves(inst: Instance, config: Sequence[Point]) -> list[tuple[int, str]]:
    """All ``(robot index, direction)`` half-steps into free space, sorted."""
    _require_free(inst, config, "input")
    ws = workspace(inst)
    out = []
    for r, c in enumerate(config):
        for d in DIR_ORDER:
            dx, dy = DIRS[d]
            t = (c[0] + dx, c[1] + dy)
            if not ws.swept_free(c, d):
                continue
            if any(squares_overlap(t, o) for k, o in enumerate(config) if k != r):
                continue
            out.append((r, d))
    return out


@dataclass(frozen=True)
class PathPlan:
    """Single-robot half-steps: ``(position before the move, direction)``."""

    steps: tuple[tuple[Point, str], ...] = ()

    def __len__(self):
        return len(self.steps)


def step(p: Point, d: str) -> Point:
    dx, dy = DIRS[d]
    return (p[0] + dx, p[1] + dy)


def replay_plan(inst: Instance, start: Sequence[Point], plan: PathPlan) -> list[tuple[Point, ...]]:
    """Unlabeled replay: every intermediate multi-configuration, each checked free."""
    cur = sorted(start)
    _require_free(inst, cur, "start")
    frames = [tuple(cur)]
    ws = workspace(inst)
    for p, d in plan.steps:
        if p not in cur:
            raise ValueError(f"no robot at {p}")
        if not ws.swept_free(p, d):
            raise ValueError(f"move {p} {d} sweeps an obstacle")
        cur.remove(p)
        q = step(p, d)
        cur = sorted(cur + [q])
        if not is_free(inst, cur):
            raise ValueError(f"move {p} {d} collides")
        frames.append(tuple(cur))
    return frames


def plan_to_indexed_moves(start: Sequence[Point], plan: PathPlan) -> list[tuple[int, str]]:
    """Witness lines ``(index of the moving robot in the sorted state, direction)``."""
    cur = sorted(start)
    out = []
    for p, d in plan.steps:
        out.append((cur.index(p), d))
        cur.remove(p)
        cur = sorted(cur + [step(p, d)])
    return out


def _search(ws: Workspace, sources: Iterable[int], goal: Callable[[int], bool],
            cap: int) -> Optional[tuple[int, list[tuple[int, str]]]]:
    """Unlabeled BFS over position bitmasks.

    Returns the source mask the witness starts from and its ``(centre index, dir)`` steps.
    """
    parent: dict[int, Optional[tuple[int, int, str]]] = {}
    queue = deque()
    for s in sources:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    moves = ws.moves
    while queue:
        s = queue.popleft()
        if goal(s):
            path = []
            while parent[s] is not None:
                prev, k, d = parent[s]
                path.append((k, d))
                s = prev
            return s, path[::-1]
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            k = low.bit_length() - 1
            for d, t, front in moves[k]:
                if s & front:
                    continue
                n = s ^ low | (1 << t)
                if n not in parent:
                    parent[n] = (s, k, d)
                    if len(parent) > cap:
                        raise Inconclusive(f"state cap {cap} exceeded")
                    queue.append(n)
    return None


def reachable_masks(ws: Workspace, source: int, cap: int = DEFAULT_STATE_CAP) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        s = queue.popleft()
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            k = low.bit_length() - 1
            for d, t, front in ws.moves[k]:
                if s & front:
                    continue
                n = s ^ low | (1 << t)
                if n not in seen:
                    seen.add(n)
                    if len(seen) > cap:
                        raise Inconclusive(f"state cap {cap} exceeded")
                    queue.append(n)
    return seen


def _plan(ws: Workspace, found) -> Optional[PathPlan]:
    if found is None:
        return None
    return PathPlan(tuple((ws.centers[k], d) for k, d in found[1]))


def _check_config(inst: Instance, config: Sequence[Point], what: str):
    if len(config) != inst.robots:
        raise ValueError(f"{what}: expected {inst.robots} robots, got {len(config)}")
    _require_free(inst, config, what)


def solve_multi_to_multi(inst: Instance, S: Sequence[Point], T: Sequence[Point],
                         cap: int = DEFAULT_STATE_CAP):
    _check_config(inst, S, "S")
    _check_config(inst, T, "T")
    ws = workspace(inst)
    target = ws.encode(T)
    found = _search(ws, [ws.encode(S)], lambda s: s == target, cap)
    return (found is not None), _plan(ws, found)


def _require_free_point(inst: Instance, p: Point, what: str):
    if not workspace(inst).square_free(p):
        raise ValueError(f"{what} {p} is not in free space")


def solve_multi_to_single(inst: Instance, S: Sequence[Point], t: Point,
                          cap: int = DEFAULT_STATE_CAP):
    _check_config(inst, S, "S")
    _require_free_point(inst, t, "t")
    ws = workspace(inst)
    bit = 1 << ws.index[t]
    found = _search(ws, [ws.encode(S)], lambda s: bool(s & bit), cap)
    return (found is not None), _plan(ws, found)


def solve_multi_to_single_restricted(inst: Instance, S: Sequence[Point], s: Point, t: Point,
                                     cap: int = DEFAULT_STATE_CAP):
    """Can the robot starting at ``s`` itself reach ``t``? State: (tracked position, all positions)."""
    _check_config(inst, S, "S")
    if tuple(s) not in {tuple(c) for c in S}:
        raise ValueError(f"s {s} is not in S")
    _require_free_point(inst, t, "t")
    ws = workspace(inst)
    tk = ws.index[t]
    start = (ws.index[tuple(s)], ws.encode(S))
    parent: dict[tuple[int, int], Optional[tuple]] = {start: None}
    queue = deque([start])
    found = None
    while queue:
        state = queue.popleft()
        tracked, mask = state
        if tracked == tk:
            found = state
            break
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            k = low.bit_length() - 1
            for d, tt, front in ws.moves[k]:
                if mask & front:
                    continue
                n = (tt if k == tracked else tracked, mask ^ low | (1 << tt))
                if n not in parent:
                    parent[n] = (state, k, d)
                    if len(parent) > cap:
                        raise Inconclusive(f"state cap {cap} exceeded")
                    queue.append(n)
    if found is None:
        return False, None
    path = []
    while parent[found] is not None:
        prev, k, d = parent[found]
        path.append((ws.centers[k], d))
        found = prev
    return True, PathPlan(tuple(path[::-1]))


def free_configurations(inst: Instance, containing: Point, cap: int = DEFAULT_STATE_CAP) -> list[int]:
    """All free multi-configurations (as masks) with a robot at ``containing``."""
    ws = workspace(inst)
    first = ws.index[tuple(containing)]
    candidates = [k for k in range(len(ws.centers)) if not ws.overlap[first] >> k & 1]
    # greedy clique cover: an independent set takes at most one centre per clique
    cliques: list[list[int]] = []
    for k in candidates:
        for cl in cliques:
            if all(ws.overlap[k] >> j & 1 for j in cl):
                cl.append(k)
                break
        else:
            cliques.append([k])
    m = inst.robots
    out: list[int] = []

    def rec(ci: int, chosen: int, count: int):
        if count == m:
            out.append(chosen)
            if len(out) > cap:
                raise Inconclusive(f"enumeration cap {cap} exceeded")
            return
        if count + (len(cliques) - ci) < m:
            return
        for k in cliques[ci]:
            if not chosen & ws.overlap[k]:
                rec(ci + 1, chosen | (1 << k), count + 1)
        rec(ci + 1, chosen, count)

    rec(0, 1 << first, 1)
    return out


def single_to_single_witness(inst: Instance, s: Point, t: Point, cap: int = DEFAULT_STATE_CAP):
    """Decide single-to-single; on success also return the chosen S and a plan from it."""
    _require_free_point(inst, s, "s")
    _require_free_point(inst, t, "t")
    ws = workspace(inst)
    sources = free_configurations(inst, s, cap)
    bit = 1 << ws.index[tuple(t)]
    found = _search(ws, sources, lambda x: bool(x & bit), cap)
    if found is None:
        return False, None, None
    return True, ws.decode(found[0]), _plan(ws, found)


def solve_single_to_single(inst: Instance, s: Point, t: Point, cap: int = DEFAULT_STATE_CAP) -> bool:
    return single_to_single_witness(inst, s, t, cap)[0]


def solve_labeled(inst: Instance, S: Sequence[Point], T: Sequence[Point],
                  assignment: dict[Point, Point], cap: int = DEFAULT_STATE_CAP):
    """Robot starting at ``s`` must end at ``assignment[s]``. State: ordered position tuple."""
    _check_config(inst, S, "S")
    _check_config(inst, T, "T")
    S = [tuple(c) for c in S]
    if set(assignment) != set(S) or sorted(assignment.values()) != sorted(tuple(c) for c in T):
        raise ValueError("assignment is not a bijection S -> T")
    ws = workspace(inst)
    start = tuple(ws.index[c] for c in S)
    goal = tuple(ws.index[assignment[c]] for c in S)
    parent: dict[tuple, Optional[tuple]] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            path = []
            while parent[state] is not None:
                prev, k, d = parent[state]
                path.append((ws.centers[k], d))
                state = prev
            return True, PathPlan(tuple(path[::-1]))
        mask = 0
        for k in state:
            mask |= 1 << k
        for r, k in enumerate(state):
            for d, t, front in ws.moves[k]:
                if mask & front:
                    continue
                n = state[:r] + (t,) + state[r + 1:]
                if n not in parent:
                    parent[n] = (state, k, d)
                    if len(parent) > cap:
                        raise Inconclusive(f"state cap {cap} exceeded")
                    queue.append(n)
    return False, None
