"""Nondeterministic constraint logic: constraint graphs, orientations, and
exact reachability solvers over the orientation move graph."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

AND, OR, CONNECTOR = "AND", "OR", "CONNECTOR"
KINDS = (AND, OR, CONNECTOR)

DEFAULT_EDGE_CAP = 24


class GraphFormatError(ValueError):
    """Structurally unusable input: duplicate ids, unknown endpoints."""


class PreconditionError(ValueError):
    """An operation was called on an input violating its precondition."""


class CapExceeded(RuntimeError):
    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeds cap {cap}")
        self.cap = cap


def natural_key(s: str):
    return tuple((0, int(t)) if t.isdigit() else (1, t) for t in re.findall(r"\d+|\D+", s))


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str
    min_flow: int


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    weight: int

    def other(self, x: str) -> str:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class ConstraintGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    _vindex: Mapping[str, Vertex] = field(init=False, repr=False, compare=False)
    _eindex: Mapping[str, Edge] = field(init=False, repr=False, compare=False)
    _incident: Mapping[str, tuple[Edge, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(sorted(self.vertices, key=lambda x: natural_key(x.id)))
        edges = tuple(sorted(self.edges, key=lambda e: natural_key(e.id)))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        vindex, eindex = {}, {}
        for v in vertices:
            if v.id in vindex:
                raise GraphFormatError(f"duplicate vertex id {v.id!r}")
            if v.kind not in KINDS:
                raise GraphFormatError(f"unknown vertex kind {v.kind!r}")
            vindex[v.id] = v
        incident: dict[str, list[Edge]] = {v.id: [] for v in vertices}
        for e in edges:
            if e.id in eindex:
                raise GraphFormatError(f"duplicate edge id {e.id!r}")
            for x in (e.u, e.v):
                if x not in vindex:
                    raise GraphFormatError(f"edge {e.id!r} references unknown vertex {x!r}")
            eindex[e.id] = e
            incident[e.u].append(e)
            if e.v != e.u:
                incident[e.v].append(e)
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", eindex)
        object.__setattr__(self, "_incident", {k: tuple(v) for k, v in incident.items()})

    @classmethod
    def build(cls, vertices: Sequence[tuple], edges: Sequence[tuple]) -> "ConstraintGraph":
        """Build from ``(id, kind[, min_flow])`` and ``(id, u, v, weight)`` tuples.

        Missing min-flow defaults to 2 for AND/OR and to the first incident
        edge weight for connectors.
        """
        es = tuple(Edge(str(i), str(u), str(v), int(w)) for i, u, v, w in edges)
        vs = []
        for rec in vertices:
            vid, kind = str(rec[0]), str(rec[1])
            if len(rec) > 2:
                mf = int(rec[2])
            elif kind == CONNECTOR:
                ws = [e.weight for e in es if vid in (e.u, e.v)]
                mf = ws[0] if ws else 1
            else:
                mf = 2
            vs.append(Vertex(vid, kind, mf))
        return cls(tuple(vs), es)

    def vertex(self, vid: str) -> Vertex:
        return self._vindex[vid]

    def edge(self, eid: str) -> Edge:
        return self._eindex[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._eindex

    def incident(self, vid: str) -> tuple[Edge, ...]:
        return self._incident[vid]

    def degree(self, vid: str) -> int:
        return len(self._incident[vid])

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)


def validate_graph(g: ConstraintGraph) -> list[str]:
    """List every violated structural rule; empty means a legal constraint graph."""
    problems = []
    seen_pairs: dict[frozenset, str] = {}
    for e in g.edges:
        if e.u == e.v:
            problems.append(f"edge {e.id}: self-loop at {e.u}")
            continue
        pair = frozenset((e.u, e.v))
        if pair in seen_pairs:
            problems.append(f"edge {e.id}: parallel to edge {seen_pairs[pair]}")
        else:
            seen_pairs[pair] = e.id
        if e.weight not in (1, 2):
            problems.append(f"edge {e.id}: weight {e.weight} not in {{1, 2}}")
    for v in g.vertices:
        inc = g.incident(v.id)
        weights = sorted(e.weight for e in inc)
        if v.kind in (AND, OR):
            if len(inc) != 3:
                problems.append(f"vertex {v.id}: {v.kind} degree {len(inc)} != 3")
            want = [1, 1, 2] if v.kind == AND else [2, 2, 2]
            if len(inc) == 3 and weights != want:
                problems.append(f"vertex {v.id}: {v.kind} weight multiset {weights} != {want}")
            if v.min_flow != 2:
                problems.append(f"vertex {v.id}: min_flow {v.min_flow} != 2")
        else:
            if len(inc) != 2:
                problems.append(f"vertex {v.id}: CONNECTOR degree {len(inc)} != 2")
            elif weights[0] != weights[1]:
                problems.append(f"vertex {v.id}: CONNECTOR weight multiset {weights} not equal")
            elif v.min_flow != weights[0]:
                problems.append(f"vertex {v.id}: capacity {v.min_flow} != path weight {weights[0]}")
    return problems


@dataclass(frozen=True)
class Orientation:
    """Head vertex per edge id."""

    heads: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, heads: Mapping[str, str]) -> "Orientation":
        return cls(tuple(sorted(heads.items(), key=lambda kv: natural_key(kv[0]))))

    def as_dict(self) -> dict[str, str]:
        return dict(self.heads)

    def head(self, eid: str) -> str:
        return self.as_dict()[eid]

    def with_head(self, eid: str, head: str) -> "Orientation":
        d = self.as_dict()
        d[eid] = head
        return Orientation.of(d)


class _Machine:
    """Bit-encoded view of a constraint graph; bit i set means edge i points at its ``v``."""

    def __init__(self, g: ConstraintGraph):
        self.g = g
        self.edges = g.edges
        self.index = {e.id: i for i, e in enumerate(g.edges)}
        self.vids = [v.id for v in g.vertices]
        vpos = {vid: k for k, vid in enumerate(self.vids)}
        self.c = [v.min_flow for v in g.vertices]
        self.ends = [(vpos[e.u], vpos[e.v], e.weight) for e in g.edges]
        self.vedges = [[] for _ in self.vids]
        for i, (a, b, _) in enumerate(self.ends):
            self.vedges[a].append(i)
            if b != a:
                self.vedges[b].append(i)

    def encode(self, o: Orientation) -> int:
        d = o.as_dict()
        if set(d) != set(self.index):
            missing = set(self.index) - set(d)
            extra = set(d) - set(self.index)
            raise PreconditionError(f"orientation mismatch: missing {sorted(missing)}, extra {sorted(extra)}")
        bits = 0
        for e, i in self.index.items():
            h = d[e]
            edge = self.edges[i]
            if h == edge.v:
                bits |= 1 << i
            elif h != edge.u:
                raise PreconditionError(f"edge {e}: head {h!r} is not an endpoint")
        return bits

    def decode(self, bits: int) -> Orientation:
        return Orientation.of({e.id: (e.v if bits >> i & 1 else e.u) for i, e in enumerate(self.edges)})

    def inflow(self, bits: int) -> list[int]:
        flow = [0] * len(self.vids)
        for i, (a, b, w) in enumerate(self.ends):
            flow[b if bits >> i & 1 else a] += w
        return flow

    def valid(self, bits: int) -> bool:
        return all(f >= c for f, c in zip(self.inflow(bits), self.c))

    def moves(self, bits: int) -> list[int]:
        flow = self.inflow(bits)
        out = []
        for i, (a, b, w) in enumerate(self.ends):
            head = b if bits >> i & 1 else a
            if flow[head] - w >= self.c[head]:
                out.append(i)
        return out

    def bfs(self, sources: Sequence[int], goal) -> Optional[list[int]]:
        """Shortest move sequence (edge indices) from any source to a state satisfying ``goal``."""
        parent: dict[int, tuple[Optional[int], int]] = {}
        queue = deque()
        for s in sources:
            if s not in parent:
                parent[s] = (None, -1)
                queue.append(s)
        while queue:
            s = queue.popleft()
            if goal(s):
                path = []
                while parent[s][0] is not None:
                    prev, i = parent[s]
                    path.append(i)
                    s = prev
                return path[::-1]
            for i in self.moves(s):
                t = s ^ (1 << i)
                if t not in parent:
                    parent[t] = (s, i)
                    queue.append(t)
        return None

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for i in self.moves(x):
                y = x ^ (1 << i)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen


def orientation_is_valid(g: ConstraintGraph, o: Orientation) -> bool:
    m = _Machine(g)
    return m.valid(m.encode(o))


def _valid_bits(m: _Machine, o: Orientation, what: str = "orientation") -> int:
    bits = m.encode(o)
    if not m.valid(bits):
        raise PreconditionError(f"{what} is not valid")
    return bits


def legal_moves(g: ConstraintGraph, o: Orientation) -> list[str]:
    m = _Machine(g)
    return [g.edges[i].id for i in m.moves(_valid_bits(m, o))]


def replay(g: ConstraintGraph, start: Orientation, witness: Sequence[str]) -> list[Orientation]:
    """Apply a move sequence, checking validity at every step."""
    m = _Machine(g)
    bits = _valid_bits(m, start, "start")
    out = [start]
    for eid in witness:
        if eid not in m.index:
            raise PreconditionError(f"unknown edge {eid!r}")
        bits ^= 1 << m.index[eid]
        if not m.valid(bits):
            raise PreconditionError(f"move {eid} leads to an invalid orientation")
        out.append(m.decode(bits))
    return out


def solve_full_to_full(g: ConstraintGraph, o_s: Orientation, o_t: Orientation):
    m = _Machine(g)
    s = _valid_bits(m, o_s, "source")
    t = _valid_bits(m, o_t, "target")
    path = m.bfs([s], lambda x: x == t)
    if path is None:
        return False, None
    return True, [g.edges[i].id for i in path]


def solve_full_to_edge(g: ConstraintGraph, o_s: Orientation, edge_id: str):
    m = _Machine(g)
    if edge_id not in m.index:
        raise PreconditionError(f"unknown edge {edge_id!r}")
    s = _valid_bits(m, o_s, "source")
    bit = 1 << m.index[edge_id]
    want = (s & bit) ^ bit
    path = m.bfs([s], lambda x: x & bit == want)
    if path is None:
        return False, None
    return True, [g.edges[i].id for i in path]


def enumerate_valid_orientations(g: ConstraintGraph, cap: int = DEFAULT_EDGE_CAP,
                                 fixed: Optional[Mapping[str, str]] = None) -> Iterator[Orientation]:
    """Every valid orientation once, in lexicographic order of edge directions
    (first edge most significant, head ``u`` before head ``v``)."""
    m = _Machine(g)
    for bits in _enumerate_bits(m, cap, fixed):
        yield m.decode(bits)


def _enumerate_bits(m: _Machine, cap: int, fixed: Optional[Mapping[str, str]] = None) -> Iterator[int]:
    n = len(m.edges)
    if n > cap:
        raise CapExceeded(f"edge count {n}", cap)
    forced: dict[int, int] = {}
    for eid, head in (fixed or {}).items():
        if eid not in m.index:
            raise PreconditionError(f"unknown edge {eid!r}")
        i = m.index[eid]
        e = m.edges[i]
        if head not in (e.u, e.v):
            raise PreconditionError(f"edge {eid}: head {head!r} is not an endpoint")
        forced[i] = 1 if head == e.v else 0
    # vertex v can be checked once its last incident edge is assigned
    last = [max(es) if es else -1 for es in m.vedges]
    check_at: list[list[int]] = [[] for _ in range(n)]
    for v, i in enumerate(last):
        if i >= 0:
            check_at[i].append(v)
    if any(i < 0 and c > 0 for i, c in zip(last, m.c)):
        return
    flow = [0] * len(m.vids)

    def rec(i: int, bits: int):
        if i == n:
            yield bits
            return
        a, b, w = m.ends[i]
        for bit in ((forced[i],) if i in forced else (0, 1)):
            head = b if bit else a
            flow[head] += w
            if all(flow[v] >= m.c[v] for v in check_at[i]):
                yield from rec(i + 1, bits | (bit << i))
            flow[head] -= w

    yield from rec(0, 0)


def solve_edge_to_edge(g: ConstraintGraph, first: tuple[str, str], second: tuple[str, str],
                       cap: int = DEFAULT_EDGE_CAP) -> bool:
    """Is there a valid orientation with ``first`` (edge id, head) that reaches
    one with ``second``?"""
    m = _Machine(g)
    (e1, h1), (e2, h2) = first, second
    for eid, head in (first, second):
        if eid not in m.index:
            raise PreconditionError(f"unknown edge {eid!r}")
        e = m.edges[m.index[eid]]
        if head not in (e.u, e.v):
            raise PreconditionError(f"edge {eid}: head {head!r} is not an endpoint")
    sources = list(_enumerate_bits(m, cap, {e1: h1}))
    if not sources:
        return False
    i2 = m.index[e2]
    want = (1 << i2) if h2 == m.edges[i2].v else 0
    return m.bfs(sources, lambda x: x & (1 << i2) == want) is not None
