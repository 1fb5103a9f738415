"""Compile a grid-embedded constraint graph into a motion-planning instance.

Every host vertex becomes one cell holding the gadget of its kind, turned
so that its ports face the neighbouring cells. An edge robot sits inside the
cell of the edge's tail: an edge pointing into ``v`` keeps ``v``'s doorway
robot outside ``v``.
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from . import motion
from .embed import GridEmbedding, embed, lift_orientation
from .gadgets import EDGE, SIDE_VEC, Assembly, make_gadget
from .motion import Instance, Point, PathPlan, squares_overlap, workspace
from .ncl import (OR, ConstraintGraph, Orientation, PreconditionError, orientation_is_valid,
                  replay, solve_edge_to_edge, solve_full_to_edge, solve_full_to_full)

F2F, F2E, E2E = "f2f", "f2e", "e2e"
PROBLEMS = (F2F, F2E, E2E)
M2M, M2S, M2SR, S2S, LABELED = "m2m", "m2s", "m2sr", "s2s", "labeled"
VARIANTS = (M2M, M2S, M2SR, S2S, LABELED)

_VEC_SIDE = {v: s for s, v in SIDE_VEC.items()}


@dataclass(frozen=True)
class Reduction:
    """The assembled workspace plus the bookkeeping that ties it back to the host graph."""
    emb: GridEmbedding
    assembly: Assembly
    cell_of: Mapping[str, tuple[int, int]]
    edge_robot: Mapping[str, int]
    # robot index -> host vertex that owns it (edge robots: None)
    vertex_robot_owner: Mapping[int, str]

    @property
    def instance(self) -> Instance:
        return self.assembly.instance

    @functools.cached_property
    def slot_owner(self) -> dict[Point, int]:
        return {p: k for k, r in enumerate(self.assembly.robots) for p in r.positions}

    def roles(self) -> dict[Point, str]:
        """Terminal position -> robot role, for drawing."""
        return {p: r.role for r in self.assembly.robots for p in r.positions}

    def provenance(self) -> tuple[str, ...]:
        out = []
        edge_of = {k: e for e, k in self.edge_robot.items()}
        for k, r in enumerate(self.assembly.robots):
            if r.role == EDGE:
                e = self.emb.host.edge(edge_of[k])
                out.append(f"robot {k}: edge robot of {e.id} ({e.u} - {e.v})")
            else:
                v = self.vertex_robot_owner[k]
                kind = self.emb.host.vertex(v).kind
                out.append(f"robot {k}: {r.role} robot {r.owners[0][1]} of {kind} gadget {v}")
        return tuple(out)


def _side(a: Point, b: Point) -> str:
    vec = (b[0] - a[0], b[1] - a[1])
    if vec not in _VEC_SIDE:
        raise RuntimeError(f"host edge between non-adjacent cells {a} and {b}")
    return _VEC_SIDE[vec]


@functools.lru_cache(maxsize=64)
def compile_embedding(emb: GridEmbedding, or_template: Optional[str] = None) -> Reduction:
    """``or_template`` names an alternate OR design; the default is the ring hub."""
    h = emb.host
    pos = emb.position
    cells = []
    for v in h.vertices:
        ports = {_side(pos[v.id], pos[e.other(v.id)]): e.weight for e in h.incident(v.id)}
        template = or_template if v.kind == OR else None
        cells.append((pos[v.id], make_gadget(v.kind, ports, template=template)))
    asm = Assembly(tuple(cells))
    edge_robot = {}
    for e in h.edges:
        edge_robot[e.id] = asm.robot_index(pos[e.u], _side(pos[e.u], pos[e.v]))
    vertex_of_cell = {pos[v.id]: v.id for v in h.vertices}
    owner = {k: vertex_of_cell[r.owners[0][0]] for k, r in enumerate(asm.robots) if r.role != EDGE}
    return Reduction(emb, asm, {v.id: pos[v.id] for v in h.vertices}, edge_robot, owner)


def build_workspace(emb: GridEmbedding, or_template: Optional[str] = None) -> Instance:
    return compile_embedding(emb, or_template).instance


# ---- orientation <-> multi-configuration -----------------------------------

def edge_slot(red: Reduction, edge_id: str, head: str) -> Point:
    """Where the edge robot of ``edge_id`` sits when the edge points at ``head``."""
    e = red.emb.host.edge(edge_id)
    if head not in (e.u, e.v):
        raise PreconditionError(f"edge {edge_id}: head {head!r} is not an endpoint")
    r = red.assembly.robots[red.edge_robot[edge_id]]
    tail = e.other(head)
    # positions are (outside, inside) as seen from the first owning cell
    return r.positions[1] if red.cell_of[tail] == r.owners[0][0] else r.positions[0]


def orientation_to_multiconfig(emb: GridEmbedding, o: Orientation,
                               or_template: Optional[str] = None) -> tuple[Point, ...]:
    """One position per robot, in robot order. Hidden vertex robots take the
    first compatible choice, trying each robot's rest position first."""
    h = emb.host
    if not orientation_is_valid(h, o):
        raise PreconditionError("orientation is not valid on the host graph")
    red = compile_embedding(emb, or_template)
    robots = red.assembly.robots
    ws = workspace(red.instance)
    config: list[Optional[Point]] = [None] * len(robots)
    heads = o.as_dict()
    for eid, k in red.edge_robot.items():
        config[k] = edge_slot(red, eid, heads[eid])
    by_vertex: dict[str, list[int]] = {}
    for k, v in red.vertex_robot_owner.items():
        by_vertex.setdefault(v, []).append(k)
    for v, ks in by_vertex.items():
        pinned = [config[red.edge_robot[e.id]] for e in h.incident(v)]
        choice = _place(ks, robots, pinned, ws)
        if choice is None:
            raise PreconditionError(f"no collision-free placement of the robots of {v}")
        for k, p in zip(ks, choice):
            config[k] = p
    return tuple(config)


def _place(ks: Sequence[int], robots, pinned: Sequence[Point], ws) -> Optional[list[Point]]:
    chosen: list[Point] = []

    def rec(i: int) -> bool:
        if i == len(ks):
            return True
        for p in robots[ks[i]].positions:
            if not ws.square_free(p):
                continue
            if any(squares_overlap(p, q) for q in pinned) or any(squares_overlap(p, q) for q in chosen):
                continue
            chosen.append(p)
            if rec(i + 1):
                return True
            chosen.pop()
        return False

    return chosen if rec(0) else None


def multiconfig_to_orientation(emb: GridEmbedding, config: Sequence[Point],
                               or_template: Optional[str] = None) -> Orientation:
    """Read the orientation off the edge-robot slots; robot identities are ignored."""
    red = compile_embedding(emb, or_template)
    occupied = {tuple(p) for p in config}
    for p in occupied:
        if p not in red.slot_owner:
            raise PreconditionError(f"position {p} is not a terminal configuration")
    heads = {}
    for e in red.emb.host.edges:
        at_v = edge_slot(red, e.id, e.v) in occupied
        at_u = edge_slot(red, e.id, e.u) in occupied
        if at_u == at_v:
            raise PreconditionError(f"edge robot of {e.id} is not at exactly one of its slots")
        heads[e.id] = e.v if at_v else e.u
    return Orientation.of(heads)


# ---- questions --------------------------------------------------------------

@dataclass(frozen=True)
class Question:
    variant: str
    S: tuple[Point, ...] = ()
    T: tuple[Point, ...] = ()
    s: Optional[Point] = None
    t: Optional[Point] = None
    # labeled variant: start position -> target position of the same robot
    assignment: tuple[tuple[Point, Point], ...] = ()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown question variant {self.variant!r}")


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    question: Question
    provenance: tuple[str, ...]
    reduction: Reduction = field(repr=False, compare=False)


def reduce(problem: str, emb: GridEmbedding, params, variant: Optional[str] = None,
           or_template: Optional[str] = None) -> ReductionOutput:
    """Build the motion question for an NCL question posed on ``emb.host``.

    ``params``: ``(o_s, o_t)`` for f2f, ``(o_s, edge_id)`` for f2e and
    ``((e1, head1), (e2, head2))`` for e2e.
    """
    red = compile_embedding(emb, or_template)
    if problem == F2F:
        o_s, o_t = params
        S = orientation_to_multiconfig(emb, o_s, or_template)
        T = orientation_to_multiconfig(emb, o_t, or_template)
        if variant == LABELED:
            q = Question(LABELED, S, T, assignment=tuple(zip(S, T)))
        elif variant in (None, M2M):
            q = Question(M2M, S, T)
        else:
            raise ValueError(f"f2f reduces to m2m or labeled, not {variant!r}")
    elif problem == F2E:
        o_s, edge_id = params
        if not emb.host.has_edge(edge_id):
            raise PreconditionError(f"unknown edge {edge_id!r}")
        S = orientation_to_multiconfig(emb, o_s, or_template)
        e = emb.host.edge(edge_id)
        head = o_s.head(edge_id)
        s = edge_slot(red, edge_id, head)
        t = edge_slot(red, edge_id, e.other(head))
        if variant not in (None, M2S, M2SR):
            raise ValueError(f"f2e reduces to m2s or m2sr, not {variant!r}")
        q = Question(variant or M2S, S, s=s, t=t)
    elif problem == E2E:
        (e1, h1), (e2, h2) = params
        for eid in (e1, e2):
            if not emb.host.has_edge(eid):
                raise PreconditionError(f"unknown edge {eid!r}")
        q = Question(S2S, s=edge_slot(red, e1, h1), t=edge_slot(red, e2, h2))
    else:
        raise ValueError(f"unknown problem {problem!r}")
    return ReductionOutput(red.instance, q, red.provenance(), red)


def solve_question(inst: Instance, q: Question, cap: int = motion.DEFAULT_STATE_CAP):
    """Dispatch to the motion solver; returns ``(answer, plan, start of the plan)``."""
    if q.variant == S2S:
        ok, start, plan = motion.single_to_single_witness(inst, q.s, q.t, cap)
        return ok, plan, start
    if q.variant == M2M:
        ok, plan = motion.solve_multi_to_multi(inst, q.S, q.T, cap)
    elif q.variant == M2S:
        ok, plan = motion.solve_multi_to_single(inst, q.S, q.t, cap)
    elif q.variant == M2SR:
        ok, plan = motion.solve_multi_to_single_restricted(inst, q.S, q.s, q.t, cap)
    else:
        ok, plan = motion.solve_labeled(inst, q.S, q.T, dict(q.assignment), cap)
    return ok, plan, (q.S if ok else None)


# ---- cross-validation --------------------------------------------------------

def witness_moves(emb: GridEmbedding, start: Sequence[Point], plan: PathPlan,
                  or_template: Optional[str] = None) -> tuple[Orientation, list[str]]:
    """Replay a motion plan and read off the host-edge flips it performs."""
    frames = motion.replay_plan(compile_embedding(emb, or_template).instance, start, plan)
    orientations = [multiconfig_to_orientation(emb, f, or_template) for f in frames]
    flips = []
    for a, b in zip(orientations, orientations[1:]):
        changed = [e for (e, x), (_, y) in zip(a.heads, b.heads) if x != y]
        if len(changed) > 1:
            raise ValueError(f"one motion step flipped {len(changed)} edges")
        flips.extend(changed)
    return orientations[0], flips


def host_edge_end(emb: GridEmbedding, edge_id: str, head: str) -> tuple[str, str]:
    """The first host edge of a graph edge's path, pointing the same way as ``head``."""
    path = emb.path_of[edge_id]
    first = emb.host_edges_of[edge_id][0]
    if head == path[-1]:
        return first, path[1]
    if head == path[0]:
        return first, path[0]
    raise PreconditionError(f"edge {edge_id}: head {head!r} is not an endpoint")


def host_params(emb: GridEmbedding, problem: str, params):
    """Translate question parameters on the embedded graph to its host graph."""
    if problem == F2F:
        return tuple(lift_orientation(emb, o) for o in params)
    if problem == F2E:
        o_s, edge_id = params
        if edge_id not in emb.path_of:
            raise PreconditionError(f"unknown edge {edge_id!r}")
        return lift_orientation(emb, o_s), host_edge_end(emb, edge_id, o_s.head(edge_id))[0]
    if problem == E2E:
        for eid, _ in params:
            if eid not in emb.path_of:
                raise PreconditionError(f"unknown edge {eid!r}")
        return tuple(host_edge_end(emb, eid, head) for eid, head in params)
    raise ValueError(f"unknown problem {problem!r}")


def reduce_graph(g: ConstraintGraph, problem: str, params, variant: Optional[str] = None,
                 emb: Optional[GridEmbedding] = None, or_template: Optional[str] = None) -> ReductionOutput:
    """Embed ``g`` and reduce a question posed on ``g`` itself."""
    emb = emb or embed(g)
    return reduce(problem, emb, host_params(emb, problem, params), variant, or_template)


def solve_ncl(g: ConstraintGraph, problem: str, params):
    """``(answer, move list or None)`` for the three NCL questions."""
    if problem == F2F:
        return solve_full_to_full(g, *params)
    if problem == F2E:
        return solve_full_to_edge(g, *params)
    if problem == E2E:
        return solve_edge_to_edge(g, *params), None
    raise ValueError(f"unknown problem {problem!r}")


@dataclass(frozen=True)
class CrosscheckResult:
    problem: str
    ncl: bool
    # motion variant -> answer; None when the motion search hit its cap
    motion: tuple[tuple[str, Optional[bool]], ...]
    # did every YES plan replay into a legal NCL move sequence reaching the goal?
    witnesses_ok: bool
    seconds: float
    notes: tuple[str, ...] = ()

    @property
    def agree(self) -> bool:
        return all(ans is not None and ans == self.ncl for _, ans in self.motion)

    @property
    def inconclusive(self) -> bool:
        return any(ans is None for _, ans in self.motion)


def crosscheck(g: ConstraintGraph, problem: str, params, budget: int = motion.DEFAULT_STATE_CAP,
               emb: Optional[GridEmbedding] = None, or_template: Optional[str] = None) -> CrosscheckResult:
    """Answer one NCL question on ``g`` directly and through the motion reduction."""
    t0 = time.perf_counter()
    emb = emb or embed(g)
    h = emb.host
    notes = []
    truth = solve_ncl(g, problem, params)[0]
    hp = host_params(emb, problem, params)
    if problem == F2F:
        variants = (M2M, LABELED)

        def reached(o: Orientation) -> bool:
            return o == hp[1]
    elif problem == F2E:
        variants = (M2S, M2SR)

        def reached(o: Orientation) -> bool:
            return o.head(hp[1]) != hp[0].head(hp[1])
    else:
        variants = (S2S,)
        (e1, h1), (e2, h2) = hp

        def reached(o: Orientation) -> bool:
            return o.head(e2) == h2
    answers = []
    witnesses_ok = True
    for variant in variants:
        out = reduce(problem, emb, hp, variant, or_template)
        try:
            ok, plan, start = solve_question(out.instance, out.question, budget)
        except motion.Inconclusive:
            answers.append((variant, None))
            notes.append(f"{variant}: state cap {budget} exceeded")
            continue
        answers.append((variant, ok))
        if not ok:
            continue
        try:
            o0, flips = witness_moves(emb, start, plan, or_template)
            final = replay(h, o0, flips)[-1]
            if problem == E2E and o0.head(e1) != h1:
                raise ValueError("witness does not start from the designated edge direction")
            if not reached(final):
                raise ValueError("witness does not reach the goal")
        except (ValueError, PreconditionError) as exc:
            witnesses_ok = False
            notes.append(f"{variant}: witness rejected: {exc}")
    return CrosscheckResult(problem, truth, tuple(answers), witnesses_ok,
                            time.perf_counter() - t0, tuple(notes))
