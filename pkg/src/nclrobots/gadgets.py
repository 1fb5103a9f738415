"""Connector, AND and OR gadgets on the half-unit lattice.

A cell interior spans ``[0, 10]^2`` in cell-local half-units; walls are one
half-unit thick, so cells repeat with pitch 11. Every port is a doorway two
half-units wide centred on its side. The shared edge robot of a port sits
either *inside* (half in the doorway, half in this cell) or *outside* (half
in the doorway, half in the neighbouring cell).

Each gadget is a set of robots, each with a short list of lattice positions
(two for every robot, four for the OR hub). The free space of a gadget is
exactly the union of those robots' squares; everything else is obstacle.
Chains of vertex robots pass a push from a port to the gadget's centre where
the logic is decided by a shared blocker.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .motion import Instance, Point, rect, squares_overlap, workspace
from .ncl import AND, CONNECTOR, OR

CELL = 10
WALL = 1
PITCH = CELL + WALL
DOOR_LO, DOOR_HI = 4, 6

SIDES = ("N", "E", "S", "W")
SIDE_VEC = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}
INSIDE = {"W": (0, 5), "E": (10, 5), "S": (5, 0), "N": (5, 10)}
OUTSIDE = {"W": (-1, 5), "E": (11, 5), "S": (5, -1), "N": (5, 11)}

EDGE, VERTEX, SPECIAL = "edge", "vertex", "special"


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class RobotSpec:
    name: str
    role: str
    positions: tuple[Point, ...]
    port: Optional[str] = None

    @property
    def start(self) -> Point:
        return self.positions[0]


@dataclass(frozen=True)
class Gadget:
    kind: str
    ports: tuple[tuple[str, int], ...]
    robots: tuple[RobotSpec, ...]
    points: tuple[Point, ...] = ()
    template: str = ""
    rotation: int = 0
    mirrored: bool = False

    @property
    def port_weights(self) -> dict[str, int]:
        return dict(self.ports)

    @property
    def edge_robots(self) -> tuple[RobotSpec, ...]:
        return tuple(r for r in self.robots if r.role == EDGE)

    @property
    def vertex_robots(self) -> tuple[RobotSpec, ...]:
        return tuple(r for r in self.robots if r.role != EDGE)

    @property
    def special_robot(self) -> Optional[str]:
        return next((r.name for r in self.robots if r.role == SPECIAL), None)

    def edge_slots(self) -> dict[str, tuple[Point, Point]]:
        """port -> (inside, outside)"""
        return {r.port: (r.positions[1], r.positions[0]) for r in self.edge_robots}

    @property
    def vertex_robot_starts(self) -> tuple[Point, ...]:
        return tuple(r.start for r in self.vertex_robots)

    @functools.cached_property
    def terminal_set(self) -> frozenset[Point]:
        return frozenset(p for r in self.robots for p in r.positions)

    @functools.cached_property
    def free_pixels(self) -> frozenset[Point]:
        return frozenset(_square_pixels(self.terminal_set))

    @functools.cached_property
    def obstacles(self) -> tuple[tuple[Point, ...], ...]:
        """Cell-local obstacle rectangles covering the interior minus free space."""
        interior = {(i, j) for i in range(CELL) for j in range(CELL)}
        return tuple(rect(*r) for r in merge_pixels(interior - self.free_pixels))

    def robot(self, name: str) -> RobotSpec:
        for r in self.robots:
            if r.name == name:
                return r
        raise KeyError(name)


def _square_pixels(centers: Iterable[Point]) -> Iterable[Point]:
    for x, y in centers:
        for i in (x - 1, x):
            for j in (y - 1, y):
                yield (i, j)


def merge_pixels(pixels: Iterable[Point]) -> list[tuple[int, int, int, int]]:
    """Cover a pixel set by disjoint rectangles: maximal row runs stacked vertically."""
    rows: dict[int, list[int]] = {}
    for i, j in pixels:
        rows.setdefault(j, []).append(i)
    rects = []
    open_runs: dict[tuple[int, int], int] = {}
    prev = None
    for j in sorted(rows):
        runs = set(_runs(sorted(rows[j])))
        for run, y0 in list(open_runs.items()):
            if run not in runs or prev != j - 1:
                rects.append((run[0], y0, run[1], prev + 1))
                del open_runs[run]
        for run in runs:
            open_runs.setdefault(run, j)
        prev = j
    rects.extend((run[0], y0, run[1], prev + 1) for run, y0 in open_runs.items())
    return sorted(rects, key=lambda r: (r[1], r[0]))


def _runs(xs: list[int]) -> Iterable[tuple[int, int]]:
    start = prev = xs[0]
    for x in xs[1:]:
        if x != prev + 1:
            yield (start, prev + 1)
            start = x
        prev = x
    yield (start, prev + 1)


# ---- templates -------------------------------------------------------------

def _edge(side: str) -> RobotSpec:
    return RobotSpec(f"port-{side}", EDGE, (OUTSIDE[side], INSIDE[side]), side)


def _chain(prefix: str, links: Sequence[tuple[Point, Point]]) -> list[RobotSpec]:
    return [RobotSpec(f"{prefix}{k}", VERTEX, link) for k, link in enumerate(links, start=1)]


@dataclass(frozen=True)
class Template:
    name: str
    kind: str
    sides: tuple[str, ...]
    robots: tuple[RobotSpec, ...]
    points: tuple[Point, ...] = ()
    heavy: Optional[str] = None  # the weight-2 side of an AND
    # alternates are only used when asked for by name
    alternate: bool = False


def _template(name, kind, sides, vertex_robots, points=(), heavy=None, alternate=False) -> Template:
    robots = tuple(_edge(s) for s in sides) + tuple(vertex_robots)
    return Template(name, kind, tuple(sides), robots, tuple(points), heavy, alternate)


_AND_CORE = [RobotSpec("D", VERTEX, ((1, 5), (2, 5)))]
_AND_NORTH = _chain("N", [((4, 9), (4, 8)), ((3, 7), (3, 6))])

TEMPLATES: tuple[Template, ...] = (
    _template("connector-straight", CONNECTOR, ("W", "E"),
              _chain("c", [((1, 5), (2, 5)), ((3, 6), (4, 6)), ((5, 7), (6, 7)),
                           ((7, 8), (8, 8)), ((9, 7), (9, 6))])),
    _template("connector-bend", CONNECTOR, ("W", "N"),
              _chain("c", [((1, 5), (2, 5)), ((3, 6), (3, 7)), ((4, 8), (4, 9))])),
    _template("and-across", AND, ("W", "N", "S"),
              _AND_CORE + _AND_NORTH + _chain("S", [((4, 1), (4, 2)), ((3, 3), (3, 4))]),
              points=[(3, 5)], heavy="W"),
    _template("and-corner", AND, ("W", "N", "E"),
              _AND_CORE + _AND_NORTH
              + _chain("E", [((9, 4), (9, 3)), ((8, 2), (7, 2)), ((6, 3), (5, 3)), ((4, 4), (3, 4))]),
              points=[(3, 5)], heavy="W"),
    # O* runs round a 2x2 ring of centres, so every legal in/out pattern
    # leaves it a connected arc to move in
    _template("or", OR, ("W", "S", "E"),
              [RobotSpec("O*", SPECIAL, ((3, 3), (4, 3), (4, 4), (3, 4)))]
              + _chain("W", [((1, 4), (2, 4))])
              + _chain("S", [((5, 1), (5, 2))])
              + _chain("E", [((9, 6), (8, 6)), ((7, 7), (6, 7)), ((5, 6), (5, 5))])),
    # three-position hub: same in/out table, but with only the centre-blocking
    # port inside O* is stuck at whichever end it was in
    _template("or-three", OR, ("W", "S", "E"),
              [RobotSpec("O*", SPECIAL, ((4, 4), (3, 4), (4, 3)))]
              + _chain("W", [((1, 5), (2, 5))])
              + _chain("S", [((5, 1), (5, 2))])
              + _chain("E", [((9, 6), (8, 6)), ((7, 7), (6, 7)), ((5, 6), (5, 5))]),
              alternate=True),
)

ROTATE_SIDE = {"E": "N", "N": "W", "W": "S", "S": "E"}
MIRROR_SIDE = {"N": "S", "S": "N", "E": "E", "W": "W"}


def _rot(p: Point) -> Point:
    return (CELL - p[1], p[0])


def _mirror(p: Point) -> Point:
    return (p[0], CELL - p[1])


def _map_robots(robots: Iterable[RobotSpec], f: Callable[[Point], Point],
                side_map: Mapping[str, str]) -> tuple[RobotSpec, ...]:
    out = []
    for r in robots:
        port = side_map[r.port] if r.port else None
        name = f"port-{port}" if r.role == EDGE else r.name
        out.append(RobotSpec(name, r.role, tuple(f(p) for p in r.positions), port))
    return tuple(out)


def rotate_gadget(g: Gadget, quarter_turns: int = 1) -> Gadget:
    """Rotate counter-clockwise about the cell centre by quarter turns."""
    for _ in range(quarter_turns % 4):
        g = replace(g, ports=tuple((ROTATE_SIDE[s], w) for s, w in g.ports),
                    robots=_map_robots(g.robots, _rot, ROTATE_SIDE),
                    points=tuple(_rot(p) for p in g.points),
                    rotation=(g.rotation + 90) % 360)
    return _canonical(g)


def mirror_gadget(g: Gadget) -> Gadget:
    """Reflect across the horizontal midline of the cell."""
    return _canonical(replace(g, ports=tuple((MIRROR_SIDE[s], w) for s, w in g.ports),
                              robots=_map_robots(g.robots, _mirror, MIRROR_SIDE),
                              points=tuple(_mirror(p) for p in g.points),
                              mirrored=not g.mirrored))


def _canonical(g: Gadget) -> Gadget:
    ports = tuple(sorted(g.ports, key=lambda sw: SIDES.index(sw[0])))
    edges = sorted((r for r in g.robots if r.role == EDGE), key=lambda r: SIDES.index(r.port))
    rest = [r for r in g.robots if r.role != EDGE]
    return replace(g, ports=ports, robots=tuple(edges + rest), points=tuple(sorted(g.points)))


def _check_ports(kind: str, ports: Mapping[str, int]):
    if kind not in (AND, OR, CONNECTOR):
        raise GadgetError(f"unknown gadget kind {kind!r}")
    bad = [s for s in ports if s not in SIDES]
    if bad:
        raise GadgetError(f"unknown port side(s) {bad}")
    weights = sorted(ports.values())
    if any(w not in (1, 2) for w in weights):
        raise GadgetError(f"port weights must be 1 or 2, got {weights}")
    want = {CONNECTOR: 2, AND: 3, OR: 3}[kind]
    if len(ports) != want:
        raise GadgetError(f"{kind} gadget needs {want} ports, got {len(ports)}")
    if kind == CONNECTOR and weights[0] != weights[1]:
        raise GadgetError("connector ports must carry equal weights")
    if kind == AND and weights != [1, 1, 2]:
        raise GadgetError(f"AND port weights must be {{2,1,1}}, got {weights}")
    if kind == OR and weights != [2, 2, 2]:
        raise GadgetError(f"OR port weights must be {{2,2,2}}, got {weights}")


def _from_template(t: Template, weights: Mapping[str, int]) -> Gadget:
    return Gadget(t.kind, tuple((s, weights[s]) for s in t.sides), t.robots, t.points, t.name)


@functools.lru_cache(maxsize=None)
def _make(kind: str, ports: tuple[tuple[str, int], ...], rotation: int, mirror: bool,
          template: Optional[str]) -> Gadget:
    want = dict(ports)
    for t in TEMPLATES:
        if t.kind != kind or (t.name != template if template else t.alternate):
            continue
        for m in (False, True):
            for r in range(4):
                sides = {}
                for s in t.sides:
                    x = MIRROR_SIDE[s] if m else s
                    for _ in range(r):
                        x = ROTATE_SIDE[x]
                    sides[s] = x
                if set(sides.values()) != set(want):
                    continue
                if t.heavy is not None and want[sides[t.heavy]] != 2:
                    continue
                g = _from_template(t, {s: want[sides[s]] for s in t.sides})
                if m:
                    g = mirror_gadget(g)
                g = rotate_gadget(g, r)
                g = replace(g, rotation=0, mirrored=False)
                if mirror:
                    g = mirror_gadget(g)
                return rotate_gadget(g, rotation // 90)
    raise GadgetError(f"no {kind} template realises ports {want}")


def make_gadget(kind: str, port_assignment: Mapping[str, int], rotation: int = 0,
                mirror: bool = False, template: Optional[str] = None) -> Gadget:
    """Gadget whose ports, before ``mirror`` and ``rotation`` are applied, are ``port_assignment``.

    ``template`` picks a design by name; by default the first non-alternate
    design of ``kind`` is used.
    """
    if rotation not in (0, 90, 180, 270):
        raise GadgetError(f"rotation must be a multiple of 90 in [0, 270], got {rotation}")
    _check_ports(kind, port_assignment)
    ports = tuple(sorted(port_assignment.items(), key=lambda sw: SIDES.index(sw[0])))
    return _make(kind, ports, rotation, bool(mirror), template)


def all_port_assignments(kind: str) -> list[dict[str, int]]:
    """Every side/weight assignment a layout can ask of ``kind``."""
    out = []
    if kind == CONNECTOR:
        for i, a in enumerate(SIDES):
            for b in SIDES[i + 1:]:
                for w in (1, 2):
                    out.append({a: w, b: w})
    else:
        for missing in SIDES:
            sides = [s for s in SIDES if s != missing]
            if kind == OR:
                out.append({s: 2 for s in sides})
            else:
                for heavy in sides:
                    out.append({s: 2 if s == heavy else 1 for s in sides})
    return out


def without_point_obstacle(g: Gadget) -> Gadget:
    """Mutant used to show the point obstacle is load-bearing."""
    return replace(g, points=())


# ---- assemblies of cells ---------------------------------------------------

@dataclass(frozen=True)
class PlacedRobot:
    name: str
    role: str
    positions: tuple[Point, ...]
    # (cell, port) for edge robots, (cell, robot name) for vertex robots
    owners: tuple[tuple[tuple[int, int], str], ...]


@dataclass(frozen=True)
class Assembly:
    """Gadgets placed on a grid of cells with shared edge robots merged."""
    cells: tuple[tuple[tuple[int, int], Gadget], ...]
    margin: int = 0

    @functools.cached_property
    def gadget_at(self) -> dict[tuple[int, int], Gadget]:
        return dict(self.cells)

    @property
    def cols(self) -> int:
        return max(c[0] for c, _ in self.cells) + 1

    @property
    def rows(self) -> int:
        return max(c[1] for c, _ in self.cells) + 1

    @property
    def width(self) -> int:
        return PITCH * self.cols + WALL + 2 * self.margin

    @property
    def height(self) -> int:
        return PITCH * self.rows + WALL + 2 * self.margin

    def to_global(self, cell: tuple[int, int], p: Point) -> Point:
        return (PITCH * cell[0] + WALL + p[0] + self.margin,
                PITCH * cell[1] + WALL + p[1] + self.margin)

    @functools.cached_property
    def robots(self) -> tuple[PlacedRobot, ...]:
        out = []
        seen: dict[tuple[tuple[int, int], str], int] = {}
        for cell, g in self.cells:
            for r in g.robots:
                pos = tuple(self.to_global(cell, p) for p in r.positions)
                if r.role != EDGE:
                    out.append(PlacedRobot(f"{cell[0]},{cell[1]}:{r.name}", r.role, pos, ((cell, r.name),)))
                    continue
                dx, dy = SIDE_VEC[r.port]
                twin = ((cell[0] + dx, cell[1] + dy), OPPOSITE[r.port])
                if twin in seen:
                    k = seen[twin]
                    prev = out[k]
                    if prev.positions != pos[::-1]:
                        raise GadgetError(f"edge slots of {cell}:{r.port} and its neighbour disagree")
                    out[k] = replace(prev, owners=prev.owners + ((cell, r.port),))
                else:
                    seen[(cell, r.port)] = len(out)
                    out.append(PlacedRobot(f"{cell[0]},{cell[1]}:{r.port}", EDGE, pos, ((cell, r.port),)))
        return tuple(out)

    @functools.cached_property
    def free_pixels(self) -> frozenset[Point]:
        return frozenset(_square_pixels(p for r in self.robots for p in r.positions))

    @functools.cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(sorted(self.to_global(c, p) for c, g in self.cells for p in g.points))

    @functools.cached_property
    def instance(self) -> Instance:
        every = {(i, j) for i in range(self.width) for j in range(self.height)}
        blocked = merge_pixels(every - self.free_pixels)
        return Instance(self.width, self.height, len(self.robots),
                        tuple(rect(*r) for r in blocked), self.points)

    def start(self) -> tuple[Point, ...]:
        return tuple(r.positions[0] for r in self.robots)

    def robot_index(self, cell: tuple[int, int], key: str) -> int:
        for k, r in enumerate(self.robots):
            if (cell, key) in r.owners:
                return k
        raise KeyError((cell, key))


def single_cell(g: Gadget, margin: int = 2) -> Assembly:
    return Assembly((((0, 0), g),), margin)


# ---- exhaustive state graphs ----------------------------------------------

FREE, IN, OUT = "free", "in", "out"
DEFAULT_GADGET_CAP = 1_000_000


class StateCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"gadget state enumeration exceeded the cap of {cap} states")
        self.cap = cap


@dataclass(frozen=True)
class GadgetStateGraph:
    assembly: Assembly
    boundary: tuple[tuple[str, str], ...]
    nodes: tuple[tuple[Point, ...], ...]
    # (source node, target node, robot index, direction)
    arcs: tuple[tuple[int, int, int, str], ...]

    @property
    def robots(self) -> tuple[PlacedRobot, ...]:
        return self.assembly.robots


def explore(asm: Assembly, starts: Sequence[Sequence[Point]], frozen: Iterable[int] = (),
            cap: int = DEFAULT_GADGET_CAP):
    """Labelled BFS from every state in ``starts``; robots in ``frozen`` never move."""
    ws = workspace(asm.instance)
    stuck = set(frozen)
    movers = [k for k in range(len(asm.robots)) if k not in stuck]
    order = list(dict.fromkeys(tuple(ws.index[p] for p in s) for s in starts))
    seen = {s: k for k, s in enumerate(order)}
    arcs = []
    queue = list(order)
    while queue:
        nxt = []
        for state in queue:
            src = seen[state]
            occupied = 0
            for c in state:
                occupied |= 1 << c
            for r in movers:
                c = state[r]
                for d, t, front in ws.moves[c]:
                    if front & occupied:
                        continue
                    new = state[:r] + (t,) + state[r + 1:]
                    k = seen.get(new)
                    if k is None:
                        if len(seen) >= cap:
                            raise StateCapExceeded(cap)
                        k = seen[new] = len(order)
                        order.append(new)
                        nxt.append(new)
                    arcs.append((src, k, r, d))
        queue = nxt
    nodes = tuple(tuple(ws.centers[c] for c in s) for s in order)
    return nodes, tuple(arcs)


def _pins(asm: Assembly, boundary: Mapping[str, str]) -> dict[int, Point]:
    (cell, g), = asm.cells
    pins = {}
    for side, mode in boundary.items():
        if mode == FREE:
            continue
        r = asm.robots[asm.robot_index(cell, side)]
        pins[asm.robot_index(cell, side)] = r.positions[1] if mode == IN else r.positions[0]
    return pins


def enumerate_gadget_states(g: Gadget, boundary: Optional[Mapping[str, str]] = None,
                            cap: int = DEFAULT_GADGET_CAP) -> GadgetStateGraph:
    """Reachable states of ``g`` alone; ``boundary`` pins ports in or out (default all free).

    The search starts from every collision-free choice of listed positions
    that agrees with the pins, so it covers all states a neighbour could hand
    this gadget, not just one component.
    """
    sides = [s for s, _ in g.ports]
    boundary = {s: FREE for s in sides} | dict(boundary or {})
    if set(boundary) != set(sides) or any(m not in (FREE, IN, OUT) for m in boundary.values()):
        raise GadgetError(f"boundary must map ports {sides} to free/in/out")
    asm = single_cell(g)
    pins = _pins(asm, boundary)
    starts = list(placements(asm, fixed=pins))
    nodes, arcs = explore(asm, starts, frozen=pins, cap=cap) if starts else ((), ())
    return GadgetStateGraph(asm, tuple(sorted(boundary.items())), nodes, arcs)


def placements(asm: Assembly, fixed: Optional[Mapping[int, Point]] = None,
               limit: Optional[int] = None):
    """Collision-free choices of one listed position per robot, in lexicographic order."""
    ws = workspace(asm.instance)
    fixed = dict(fixed or {})
    robots = asm.robots
    options = [[fixed[k]] if k in fixed else [p for p in r.positions if ws.square_free(p)]
               for k, r in enumerate(robots)]
    chosen: list[Point] = []
    count = 0

    def rec(k: int):
        nonlocal count
        if k == len(robots):
            count += 1
            yield tuple(chosen)
            return
        for p in options[k]:
            if any(squares_overlap(p, q) for q in chosen):
                continue
            chosen.append(p)
            yield from rec(k + 1)
            chosen.pop()
            if limit is not None and count >= limit:
                return

    yield from rec(0)


# ---- semantic and structural verification ----------------------------------

@dataclass(frozen=True)
class Report:
    problems: tuple[str, ...] = ()
    stats: tuple[tuple[str, int], ...] = ()
    # hidden-state splits: legal in/out projections whose vertex-robot states are disconnected
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def merged(self, other: "Report") -> "Report":
        counts = dict(self.stats)
        for k, v in other.stats:
            counts[k] = max(counts.get(k, 0), v) if k.endswith("_max") else counts.get(k, 0) + v
        return Report(self.problems + other.problems, tuple(sorted(counts.items())),
                      self.warnings + other.warnings)


def allowed(g: Gadget, inside: Iterable[str]) -> bool:
    """NCL validity at the gadget's vertex: an inside robot means an edge directed outward."""
    inside = set(inside)
    inflow = sum(w for s, w in g.ports if s not in inside)
    need = g.ports[0][1] if g.kind == CONNECTOR else 2
    return inflow >= need


def inside_set(sg: GadgetStateGraph, node: tuple[Point, ...]) -> Optional[frozenset[str]]:
    """Ports whose edge robot is inside; None if an edge robot is off its slots."""
    (cell, _), = sg.assembly.cells
    out = set()
    for r, p in zip(sg.robots, node):
        if r.role != EDGE:
            continue
        port = r.owners[0][1]
        if p == r.positions[1]:
            out.add(port)
        elif p != r.positions[0]:
            return None
    return frozenset(out)


def _boundaries(g: Gadget):
    sides = [s for s, _ in g.ports]
    for modes in itertools.product((FREE, IN, OUT), repeat=len(sides)):
        yield dict(zip(sides, modes))


def check_gadget(g: Gadget, cap: int = DEFAULT_GADGET_CAP) -> Report:
    """Compare the in/out projection of every boundary regime with the vertex rule."""
    label = f"{g.kind} {g.template} ports={dict(g.ports)} rot={g.rotation} mirror={g.mirrored}"
    sides = [s for s, _ in g.ports]
    problems = []
    warnings = []
    states = 0
    for boundary in _boundaries(g):
        tag = f"{label} boundary={boundary}"
        free_ports = [s for s in sides if boundary[s] == FREE]
        expected = set()
        for k in range(len(sides) + 1):
            for combo in itertools.combinations(sides, k):
                inside = frozenset(combo)
                if not allowed(g, inside):
                    continue
                if any((boundary[s] == IN) != (s in inside) for s in sides if s not in free_ports):
                    continue
                expected.add(inside)
        sg = enumerate_gadget_states(g, boundary, cap)
        states += len(sg.nodes)
        proj = [inside_set(sg, n) for n in sg.nodes]
        if any(p is None for p in proj):
            problems.append(f"{tag}: an edge robot leaves its two slots")
            continue
        got = set(proj)
        for extra in sorted(map(sorted, got - expected)):
            problems.append(f"{tag}: illegal reachable inside-set {extra}")
        for missing in sorted(map(sorted, expected - got)):
            problems.append(f"{tag}: legal inside-set {missing} unreachable")
        want_arcs = {(a, a ^ {s}) for a in expected for s in free_ports if a ^ {s} in expected}
        got_arcs = {(proj[i], proj[j]) for i, j, _, _ in sg.arcs if proj[i] != proj[j]}
        for a, b in sorted(want_arcs - got_arcs, key=str):
            problems.append(f"{tag}: missing transition {sorted(a)} -> {sorted(b)}")
        for a, b in sorted(got_arcs - want_arcs, key=str):
            problems.append(f"{tag}: illegal transition {sorted(a)} -> {sorted(b)}")
        # states sharing an inside-set must be mutually reachable by vertex-robot moves
        parent = list(range(len(sg.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for i, j, _, _ in sg.arcs:
            if proj[i] == proj[j]:
                parent[find(i)] = find(j)
        roots: dict[frozenset, set] = {}
        for k, p in enumerate(proj):
            roots.setdefault(p, set()).add(find(k))
        for p, rs in sorted(roots.items(), key=lambda kv: sorted(kv[0])):
            if len(rs) > 1:
                warnings.append(f"{tag}: inside-set {sorted(p)} splits into {len(rs)} components")
    return Report(tuple(problems), (("gadgets", 1), ("states", states)), tuple(warnings))


def gadget_variants(kind: str, template: Optional[str] = None):
    for pa in all_port_assignments(kind):
        for rotation in (0, 90, 180, 270):
            yield make_gadget(kind, pa, rotation, template=template)


def verify_gadget_semantics(kind: str, cap: int = DEFAULT_GADGET_CAP,
                            template: Optional[str] = None) -> Report:
    report = Report()
    for g in gadget_variants(kind, template):
        report = report.merged(check_gadget(g, cap))
    return report


def pair_assembly(left: Gadget, side: str, right: Gadget, margin: int = 2) -> Assembly:
    """``right`` sits next to ``left`` across ``left``'s port ``side``."""
    if side not in left.port_weights or OPPOSITE[side] not in right.port_weights:
        raise GadgetError(f"gadgets do not meet across side {side}")
    if left.port_weights[side] != right.port_weights[OPPOSITE[side]]:
        raise GadgetError("shared port weights differ")
    dx, dy = SIDE_VEC[side]
    a = (max(0, -dx), max(0, -dy))
    b = (a[0] + dx, a[1] + dy)
    return Assembly(((a, left), (b, right)), margin)


def check_structure(asm: Assembly, cap: int = DEFAULT_GADGET_CAP) -> Report:
    """Position counts per robot and one identity per terminal position, over all reachable states."""
    starts = list(placements(asm))
    nodes, _ = explore(asm, starts, cap=cap)
    problems = []
    used: list[set[Point]] = [set() for _ in asm.robots]
    for n in nodes:
        for k, p in enumerate(n):
            used[k].add(p)
    holder: dict[Point, int] = {}
    special = 0
    for k, (r, ps) in enumerate(zip(asm.robots, used)):
        limit = 3 if r.role == SPECIAL else 2
        if len(ps) > limit:
            problems.append(f"robot {r.name} ({r.role}) occupies {len(ps)} > {limit} positions")
        if r.role == EDGE and len(ps) == 2:
            a, b = sorted(ps)
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                problems.append(f"edge robot {r.name}: positions {a}, {b} are not neighbours")
        if r.role == SPECIAL:
            special = max(special, len(ps))
        for p in ps:
            if holder.setdefault(p, k) != k:
                problems.append(f"position {p} held by {asm.robots[holder[p]].name} and {r.name}")
    return Report(tuple(problems), (("pairs", 1), ("states", len(nodes)), ("special_max", special)))


def connected_pairs(or_template: Optional[str] = None):
    """Every (left, side, right) of gadget variants that can share an edge robot."""
    variants = [make_gadget(k, pa, template=or_template if k == OR else None)
                for k in (CONNECTOR, AND, OR) for pa in all_port_assignments(k)]
    for side in ("E", "N"):
        for left in variants:
            if side not in left.port_weights:
                continue
            for right in variants:
                w = right.port_weights.get(OPPOSITE[side])
                if w is not None and w == left.port_weights[side]:
                    yield left, side, right


def verify_structural_lemmas(left: Gadget, side: str, right: Gadget,
                             cap: int = DEFAULT_GADGET_CAP) -> Report:
    return check_structure(pair_assembly(left, side, right), cap)
