"""Orthogonal grid embedding of planar AND/OR constraint graphs.

Every G-edge becomes a rectilinear path of unit grid steps whose interior
points are connector vertices. The embedder places vertices with a planar
straight-line grid drawing (networkx's Chrobak-Payne implementation), scales
it up, and routes each edge by breadth-first search around already used grid
points. When that greedy order gets stuck, edges are rerouted together with
negotiated congestion. The scale is raised until every edge routes, so the layout area stays
within a constant factor of the ``(2n-4) x (n-2)`` drawing grid.
"""

from __future__ import annotations

import functools
import heapq
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional

import networkx as nx
from networkx.algorithms.planar_drawing import combinatorial_embedding_to_pos

from .ncl import (CONNECTOR, ConstraintGraph, Edge, Orientation, PreconditionError, Vertex,
                  natural_key, orientation_is_valid, validate_graph)

Point = tuple[int, int]

MAX_SCALE = 12
# area <= AREA_CONSTANT * |V|^2 for every embedding this module produces
AREA_CONSTANT = 2 * (MAX_SCALE + 1) ** 2

GRID_STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))
# the eight symmetries of the square lattice, tried so short routings are found
SYMMETRIES = (
    lambda x, y: (x, y), lambda x, y: (-y, x), lambda x, y: (-x, -y), lambda x, y: (y, -x),
    lambda x, y: (x, -y), lambda x, y: (y, x), lambda x, y: (-x, y), lambda x, y: (-y, -x),
)
# small scales are cheap; try a few before settling for the shortest routing found
MIN_SCALES_TRIED = 3
# graphs up to this size get a hill-climbing pass that shortens paths
COMPACT_LIMIT = 8


class PlanarityError(ValueError):
    pass


class EmbeddingError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridEmbedding:
    host: ConstraintGraph
    layout: tuple[tuple[str, Point], ...]
    paths: tuple[tuple[str, tuple[str, ...]], ...]
    connectors: frozenset[str]

    @functools.cached_property
    def position(self) -> dict[str, Point]:
        return dict(self.layout)

    @functools.cached_property
    def path_of(self) -> dict[str, tuple[str, ...]]:
        return dict(self.paths)

    @functools.cached_property
    def host_edges_of(self) -> dict[str, tuple[str, ...]]:
        """G-edge id -> H-edge ids along its path, in path order."""
        lookup = {frozenset((e.u, e.v)): e.id for e in self.host.edges}
        out = {}
        for eid, path in self.paths:
            out[eid] = tuple(lookup[frozenset(p)] for p in zip(path, path[1:]))
        return out

    @functools.cached_property
    def g_edge_of(self) -> dict[str, str]:
        return {h: g for g, hs in self.host_edges_of.items() for h in hs}

    def __hash__(self):
        return hash((self.layout, self.paths))

    def __eq__(self, other):
        return (isinstance(other, GridEmbedding) and self.layout == other.layout
                and self.paths == other.paths and self.host == other.host)


def host_edge_id(g_edge: str, k: int) -> str:
    return f"{g_edge}.{k}"


def connector_id(g_edge: str, k: int) -> str:
    return f"{g_edge}~{k}"


def embed(g: ConstraintGraph) -> GridEmbedding:
    problems = validate_graph(g)
    if any(v.kind == CONNECTOR for v in g.vertices):
        raise PreconditionError("input graph already contains connector vertices")
    if problems:
        raise PreconditionError("invalid constraint graph: " + "; ".join(problems))
    nxg = nx.Graph()
    nxg.add_nodes_from(v.id for v in g.vertices)
    nxg.add_edges_from((e.u, e.v) for e in g.edges)
    planar, comb = nx.check_planarity(nxg)
    if not planar:
        raise PlanarityError("constraint graph is not planar")
    base = _base_drawing(nxg, comb)
    best = None
    for scale in range(1, MAX_SCALE + 1):
        # greedy routing first; negotiated rip-up only when no symmetry routes greedily
        routed = False
        for negotiate in (False, True):
            if routed:
                break
            for sym in SYMMETRIES:
                if routed and negotiate:
                    break
                placed = {v: sym(x * scale, y * scale) for v, (x, y) in base.items()}
                for by_length in ((True,) if negotiate else (True, False)):
                    routes = _route_all(g, placed, by_length, negotiate)
                    if routes is None:
                        continue
                    routed = True
                    cost = (sum(len(r) for r in routes.values()), _area(placed, routes))
                    if best is None or cost < best[0]:
                        best = (cost, placed, routes)
        if best is not None and scale >= MIN_SCALES_TRIED:
            if len(base) <= COMPACT_LIMIT:
                best = _compact(g, best)
            return _assemble(g, best[1], best[2])
    raise EmbeddingError(f"routing failed up to scale {MAX_SCALE}")


def _best_routing(g: ConstraintGraph, placed: Mapping[str, Point]):
    best = None
    for by_length in (True, False):
        routes = _route_all(g, placed, by_length)
        if routes is not None:
            cost = (sum(len(r) for r in routes.values()), _area(placed, routes))
            if best is None or cost < best[0]:
                best = (cost, dict(placed), routes)
    return best


def _compact(g: ConstraintGraph, best):
    """Hill-climb single-vertex moves while the total routed length shrinks."""
    improved = True
    while improved:
        improved = False
        for v in sorted(best[1], key=natural_key):
            pts = list(best[1].values()) + [p for r in best[2].values() for p in r]
            x0 = min(p[0] for p in pts) - 1
            x1 = max(p[0] for p in pts) + 1
            y0 = min(p[1] for p in pts) - 1
            y1 = max(p[1] for p in pts) + 1
            taken = set(best[1].values())
            for x in range(x0, x1 + 1):
                for y in range(y0, y1 + 1):
                    if (x, y) in taken:
                        continue
                    trial = _best_routing(g, {**best[1], v: (x, y)})
                    if trial is not None and trial[0] < best[0]:
                        best = trial
                        improved = True
                        taken = set(best[1].values())
    return best


def _area(placed, routes) -> int:
    pts = list(placed.values()) + [p for r in routes.values() for p in r]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1)


def _base_drawing(nxg: nx.Graph, comb) -> dict[str, Point]:
    pos: dict[str, Point] = {}
    for comp in sorted(nx.connected_components(nxg), key=lambda c: min(map(natural_key, c))):
        sub = nx.PlanarEmbedding(comb.subgraph(comp)) if len(comp) > 2 else None
        if sub is None:
            local = {v: (i, 0) for i, v in enumerate(sorted(comp, key=natural_key))}
        else:
            local = combinatorial_embedding_to_pos(sub)
        shift = max((x for x, _ in pos.values()), default=-2) + 2
        for v, (x, y) in local.items():
            pos[v] = (int(x) + shift, int(y))
    return pos


def _route_all(g: ConstraintGraph, placed: Mapping[str, Point], by_length: bool = True,
               negotiate: bool = False) -> Optional[dict[str, list[Point]]]:
    vertex_at = {p: v for v, p in placed.items()}
    used = set(vertex_at)
    reserved: dict[Point, set[str]] = {}
    for v, (x, y) in placed.items():
        for dx, dy in GRID_STEPS:
            reserved.setdefault((x + dx, y + dy), set()).add(v)
    xs = [p[0] for p in placed.values()]
    ys = [p[1] for p in placed.values()]
    box = (min(xs) - 2, min(ys) - 2, max(xs) + 2, max(ys) + 2)

    def length(e: Edge):
        (x0, y0), (x1, y1) = placed[e.u], placed[e.v]
        return (abs(x0 - x1) + abs(y0 - y1) if by_length else 0, natural_key(e.id))

    if negotiate:
        return _route_negotiated(g, placed, reserved, (box[0] - 1, box[1] - 1, box[2] + 1, box[3] + 1))
    routes = {}
    for e in sorted(g.edges, key=length):
        path = _route(placed[e.u], placed[e.v], {e.u, e.v}, used, reserved, box)
        if path is None:
            return None
        routes[e.id] = path
        used.update(path[1:-1])
    return routes


NEGOTIATION_ROUNDS = 40


def _route_negotiated(g: ConstraintGraph, placed: Mapping[str, Point],
                      reserved: Mapping[Point, set[str]], box) -> Optional[dict[str, list[Point]]]:
    """Rip-up and reroute: every edge is rerouted each round against a price
    that grows with present sharing and with the history of past sharing."""
    x0, y0, x1, y1 = box
    vertex_points = set(placed.values())
    history: dict[Point, float] = {}
    routes: dict[str, list[Point]] = {}
    edges = sorted(g.edges, key=lambda e: natural_key(e.id))
    for rnd in range(NEGOTIATION_ROUNDS):
        pressure = 0.5 * (rnd + 1)
        for e in edges:
            routes.pop(e.id, None)
            occ: dict[Point, int] = {}
            for r in routes.values():
                for p in r[1:-1]:
                    occ[p] = occ.get(p, 0) + 1
            ends = {e.u, e.v}
            src, dst = placed[e.u], placed[e.v]
            dist = {src: 0.0}
            parent: dict[Point, Optional[Point]] = {src: None}
            heap = [(0.0, src)]
            while heap:
                d, p = heapq.heappop(heap)
                if p == dst:
                    break
                if d > dist[p]:
                    continue
                for dx, dy in GRID_STEPS:
                    q = (p[0] + dx, p[1] + dy)
                    if q != dst:
                        if q in vertex_points or not (x0 <= q[0] <= x1 and y0 <= q[1] <= y1):
                            continue
                        owners = reserved.get(q)
                        if owners is not None and not owners <= ends:
                            continue
                    step = (1.0 + history.get(q, 0.0)) * (1.0 + pressure * occ.get(q, 0))
                    if d + step < dist.get(q, float("inf")):
                        dist[q] = d + step
                        parent[q] = p
                        heapq.heappush(heap, (d + step, q))
            if dst not in parent:
                return None
            path = [dst]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            routes[e.id] = path[::-1]
        occ = {}
        for r in routes.values():
            for p in r[1:-1]:
                occ[p] = occ.get(p, 0) + 1
        shared = [p for p, c in occ.items() if c > 1]
        if not shared:
            return routes
        for p in shared:
            history[p] = history.get(p, 0.0) + 1.0
    return None


def _route(src: Point, dst: Point, ends: set[str], used: set[Point],
           reserved: Mapping[Point, set[str]], box) -> Optional[list[Point]]:
    x0, y0, x1, y1 = box

    def allowed(p: Point) -> bool:
        if p == dst:
            return True
        if p in used or not (x0 <= p[0] <= x1 and y0 <= p[1] <= y1):
            return False
        owners = reserved.get(p)
        return owners is None or owners <= ends

    parent = {src: None}
    queue = deque([src])
    while queue:
        p = queue.popleft()
        if p == dst:
            out = []
            while p is not None:
                out.append(p)
                p = parent[p]
            return out[::-1]
        for dx, dy in GRID_STEPS:
            q = (p[0] + dx, p[1] + dy)
            if q not in parent and allowed(q):
                parent[q] = p
                queue.append(q)
    return None


def _assemble(g: ConstraintGraph, placed: Mapping[str, Point], routes: Mapping[str, list[Point]]) -> GridEmbedding:
    xs = [p[0] for r in routes.values() for p in r] + [p[0] for p in placed.values()]
    ys = [p[1] for r in routes.values() for p in r] + [p[1] for p in placed.values()]
    mx, my = min(xs), min(ys)
    layout = {v: (x - mx, y - my) for v, (x, y) in placed.items()}
    vertices = list(g.vertices)
    edges = []
    paths = []
    connectors = set()
    for e in g.edges:
        pts = routes[e.id]
        names = [e.u]
        for k, (x, y) in enumerate(pts[1:-1], start=1):
            cid = connector_id(e.id, k)
            names.append(cid)
            connectors.add(cid)
            layout[cid] = (x - mx, y - my)
            vertices.append(Vertex(cid, CONNECTOR, e.weight))
        names.append(e.v)
        for k, (a, b) in enumerate(zip(names, names[1:])):
            edges.append(Edge(host_edge_id(e.id, k), a, b, e.weight))
        paths.append((e.id, tuple(names)))
    host = ConstraintGraph(tuple(vertices), tuple(edges))
    return GridEmbedding(
        host=host,
        layout=tuple(sorted(layout.items(), key=lambda kv: natural_key(kv[0]))),
        paths=tuple(sorted(paths, key=lambda kv: natural_key(kv[0]))),
        connectors=frozenset(connectors),
    )


def check_embedding(g: ConstraintGraph, emb: GridEmbedding) -> list[str]:
    """Audit every embedding invariant independently of how ``emb`` was built."""
    out = []
    h = emb.host
    pos = emb.position
    for v in h.vertices:
        if v.id not in pos:
            out.append(f"vertex {v.id}: no grid position")
    if out:
        return out
    owners: dict[Point, str] = {}
    for vid, p in pos.items():
        if p in owners:
            out.append(f"grid point {p}: shared by {owners[p]} and {vid}")
        owners[p] = vid
    for e in h.edges:
        (x0, y0), (x1, y1) = pos[e.u], pos[e.v]
        if abs(x0 - x1) + abs(y0 - y1) != 1:
            out.append(f"H-edge {e.id}: endpoints {pos[e.u]}, {pos[e.v]} are not unit-adjacent")
    segments: dict[frozenset, str] = {}
    for e in h.edges:
        seg = frozenset((pos[e.u], pos[e.v]))
        if seg in segments:
            out.append(f"H-edges {segments[seg]} and {e.id} overlap")
        segments[seg] = e.id
    hverts = {x.id for x in h.vertices}
    for v in g.vertices:
        if v.id not in hverts:
            out.append(f"vertex {v.id}: missing from H")
            continue
        hv = h.vertex(v.id)
        if (hv.kind, hv.min_flow) != (v.kind, v.min_flow):
            out.append(f"vertex {v.id}: kind/min_flow changed")
    gverts = {v.id for v in g.vertices}
    for hv in h.vertices:
        if hv.id not in gverts and hv.kind != CONNECTOR:
            out.append(f"vertex {hv.id}: extra non-connector vertex")
    lookup = {frozenset((e.u, e.v)): e for e in h.edges}
    seen_interior: dict[str, str] = {}
    covered: set[str] = set()
    contracted = []
    paths = emb.path_of
    for e in g.edges:
        path = paths.get(e.id)
        if path is None:
            out.append(f"G-edge {e.id}: no path")
            continue
        if {path[0], path[-1]} != {e.u, e.v} or len(path) < 2:
            out.append(f"G-edge {e.id}: path endpoints {path[0]}, {path[-1]} do not match")
        for x in path[1:-1]:
            if x in gverts:
                out.append(f"G-edge {e.id}: noncrossing violated, path passes through vertex {x}")
            elif x in seen_interior:
                out.append(f"G-edge {e.id}: noncrossing violated, shares {x} with {seen_interior[x]}")
            else:
                seen_interior[x] = e.id
            if x in gverts:
                continue
            hv = h.vertex(x) if x in hverts else None
            if hv is None:
                out.append(f"G-edge {e.id}: unknown path vertex {x}")
            elif hv.kind != CONNECTOR:
                out.append(f"G-edge {e.id}: interior vertex {x} is not a connector")
            elif hv.min_flow != e.weight:
                out.append(f"connector {x}: capacity {hv.min_flow} != path weight {e.weight}")
        for a, b in zip(path, path[1:]):
            he = lookup.get(frozenset((a, b)))
            if he is None:
                out.append(f"G-edge {e.id}: missing H-edge {a}-{b}")
                continue
            covered.add(he.id)
            if he.weight != e.weight:
                out.append(f"H-edge {he.id}: weight {he.weight} != path weight {e.weight}")
        contracted.append((frozenset((path[0], path[-1])), e.weight))
    for he in h.edges:
        if he.id not in covered:
            out.append(f"H-edge {he.id}: not on any path")
    for c in emb.connectors:
        if c not in seen_interior:
            out.append(f"connector {c}: not on any path")
    original = sorted((sorted((e.u, e.v)), e.weight) for e in g.edges)
    if sorted((sorted(p), w) for p, w in contracted) != original:
        out.append("contracting the paths does not reproduce G")
    out.extend(f"H: {p}" for p in validate_graph(h))
    return out


def lift_orientation(emb: GridEmbedding, o_g: Orientation) -> Orientation:
    g_edges = set(emb.path_of)
    heads = o_g.as_dict()
    if set(heads) != g_edges:
        raise PreconditionError("orientation does not cover the embedded graph's edges")
    out = {}
    for eid, path in emb.paths:
        forward = heads[eid] == path[-1]
        if not forward and heads[eid] != path[0]:
            raise PreconditionError(f"edge {eid}: head {heads[eid]!r} is not an endpoint")
        for k, (a, b) in enumerate(zip(path, path[1:])):
            out[emb.host_edges_of[eid][k]] = b if forward else a
    lifted = Orientation.of(out)
    if not orientation_is_valid(emb.host, lifted):
        raise PreconditionError("orientation is not valid")
    return lifted


def project_orientation(emb: GridEmbedding, o_h: Orientation) -> tuple[Orientation, frozenset[str]]:
    """Project to G by each path's first H-edge; also return G-edges whose path is mixed."""
    heads = o_h.as_dict()
    out = {}
    mixed = set()
    for eid, path in emb.paths:
        hs = emb.host_edges_of[eid]
        dirs = [heads[h] == b for h, b in zip(hs, path[1:])]
        out[eid] = path[-1] if dirs[0] else path[0]
        if len(set(dirs)) > 1:
            mixed.add(eid)
    return Orientation.of(out), frozenset(mixed)


def layout_area(emb: GridEmbedding) -> int:
    xs = [p[0] for p in emb.position.values()]
    ys = [p[1] for p in emb.position.values()]
    return (max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1)
