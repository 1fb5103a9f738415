"""Line-oriented text formats for graphs, orientations and motion instances.

Every document starts with ``format <name> v1``. Blank lines and ``#``
comments are ignored. Coordinates are integers in half-units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .embed import GridEmbedding
from .motion import Instance, InstanceError, Point
from .ncl import ConstraintGraph, Edge, GraphFormatError, Orientation, Vertex, natural_key, validate_graph
from .reducer import VARIANTS, Question

GRAPH_FORMAT = "ncl-graph"
ORIENTATION_FORMAT = "ncl-orientation"
INSTANCE_FORMAT = "mp-instance"
VERSION = "v1"


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _records(text: str, name: str) -> Iterable[tuple[int, list[tuple[int, str]]]]:
    """Yield ``(line number, [(column, token), ...])`` after checking the header."""
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            tokens.append((col + 1, tok))
            col += len(tok)
        if not tokens:
            continue
        if not header_seen:
            words = [t for _, t in tokens]
            if words != ["format", name, VERSION]:
                raise ParseError(lineno, 1, f"expected header 'format {name} {VERSION}'")
            header_seen = True
            continue
        yield lineno, tokens
    if not header_seen:
        raise ParseError(1, 1, f"missing header 'format {name} {VERSION}'")


def _int(lineno: int, col: int, tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, col, f"expected an integer, got {tok!r}") from None


def _arity(lineno: int, tokens, lo: int, hi: Optional[int] = None):
    hi = lo if hi is None else hi
    if not lo <= len(tokens) <= hi:
        want = str(lo) if lo == hi else f"{lo}-{hi}"
        raise ParseError(lineno, tokens[0][0], f"'{tokens[0][1]}' takes {want} fields, got {len(tokens) - 1}")


# ---- constraint graphs -----------------------------------------------------

def parse_graph(text: str, validate: bool = True) -> ConstraintGraph:
    vertices: dict[str, Vertex] = {}
    edges: dict[str, Edge] = {}
    raw_edges = []
    for lineno, toks in _records(text, GRAPH_FORMAT):
        kw = toks[0][1]
        if kw == "vertex":
            _arity(lineno, toks, 3, 4)
            vid, kind = toks[1][1], toks[2][1]
            if vid in vertices:
                raise ParseError(lineno, toks[1][0], f"duplicate vertex id {vid!r}")
            if kind not in ("AND", "OR", "CONNECTOR"):
                raise ParseError(lineno, toks[2][0], f"unknown vertex kind {kind!r}")
            mf = _int(lineno, *toks[3]) if len(toks) == 4 else None
            vertices[vid] = Vertex(vid, kind, mf if mf is not None else -1)
        elif kw == "edge":
            _arity(lineno, toks, 5)
            eid, u, v = toks[1][1], toks[2][1], toks[3][1]
            if eid in edges:
                raise ParseError(lineno, toks[1][0], f"duplicate edge id {eid!r}")
            w = _int(lineno, *toks[4])
            if u == v:
                raise ParseError(lineno, toks[3][0], f"edge {eid}: self-loop at {u}")
            edges[eid] = Edge(eid, u, v, w)
            raw_edges.append((lineno, toks))
        else:
            raise ParseError(lineno, toks[0][0], f"unknown record {kw!r}")
    for lineno, toks in raw_edges:
        for col, vid in (toks[2], toks[3]):
            if vid not in vertices:
                raise ParseError(lineno, col, f"unknown vertex {vid!r}")
    # default min-flow: 2 for AND/OR, the edge weight for connectors
    fixed = []
    for vid, v in vertices.items():
        if v.min_flow >= 0:
            fixed.append(v)
            continue
        if v.kind == "CONNECTOR":
            ws = [e.weight for e in edges.values() if vid in (e.u, e.v)]
            fixed.append(Vertex(vid, v.kind, ws[0] if ws else 1))
        else:
            fixed.append(Vertex(vid, v.kind, 2))
    try:
        g = ConstraintGraph(tuple(fixed), tuple(edges.values()))
    except GraphFormatError as exc:
        raise ParseError(1, 1, str(exc)) from None
    if validate:
        problems = validate_graph(g)
        if problems:
            raise GraphFormatError("; ".join(problems))
    return g


def serialize_graph(g: ConstraintGraph) -> str:
    lines = [f"format {GRAPH_FORMAT} {VERSION}"]
    for v in g.vertices:
        lines.append(f"vertex {v.id} {v.kind} {v.min_flow}")
    for e in g.edges:
        lines.append(f"edge {e.id} {e.u} {e.v} {e.weight}")
    return "\n".join(lines) + "\n"


def parse_orientation(text: str) -> Orientation:
    heads = {}
    for lineno, toks in _records(text, ORIENTATION_FORMAT):
        if toks[0][1] != "head":
            raise ParseError(lineno, toks[0][0], f"unknown record {toks[0][1]!r}")
        _arity(lineno, toks, 3)
        if toks[1][1] in heads:
            raise ParseError(lineno, toks[1][0], f"duplicate edge {toks[1][1]!r}")
        heads[toks[1][1]] = toks[2][1]
    return Orientation.of(heads)


def serialize_orientation(o: Orientation) -> str:
    lines = [f"format {ORIENTATION_FORMAT} {VERSION}"]
    for eid, head in sorted(o.heads, key=lambda kv: natural_key(kv[0])):
        lines.append(f"head {eid} {head}")
    return "\n".join(lines) + "\n"


# ---- motion instances ------------------------------------------------------

@dataclass(frozen=True)
class InstanceDocument:
    instance: Instance
    question: Optional[Question] = None
    provenance: tuple[str, ...] = ()


def _points(lineno: int, toks) -> tuple[Point, ...]:
    vals = [_int(lineno, c, t) for c, t in toks]
    if len(vals) % 2:
        raise ParseError(lineno, toks[-1][0], "odd number of coordinates")
    return tuple(zip(vals[::2], vals[1::2]))


def parse_instance(text: str) -> InstanceDocument:
    bounds = robots = None
    units_seen = False
    obstacles, points, provenance = [], [], []
    variant = None
    fields: dict[str, object] = {}
    for lineno, toks in _records(text, INSTANCE_FORMAT):
        kw = toks[0][1]
        if kw == "units":
            _arity(lineno, toks, 2)
            if toks[1][1] != "half":
                raise ParseError(lineno, toks[1][0], f"unsupported units {toks[1][1]!r}; only 'half'")
            units_seen = True
        elif kw == "bounds":
            _arity(lineno, toks, 3)
            bounds = (_int(lineno, *toks[1]), _int(lineno, *toks[2]))
        elif kw == "robots":
            _arity(lineno, toks, 2)
            robots = _int(lineno, *toks[1])
        elif kw == "obstacle":
            obstacles.append(_points(lineno, toks[1:]))
        elif kw == "point":
            _arity(lineno, toks, 3)
            points.append(_points(lineno, toks[1:])[0])
        elif kw == "question":
            _arity(lineno, toks, 2)
            if toks[1][1] not in VARIANTS:
                raise ParseError(lineno, toks[1][0], f"unknown question variant {toks[1][1]!r}")
            variant = toks[1][1]
        elif kw in ("S", "T"):
            fields[kw] = _points(lineno, toks[1:])
        elif kw in ("s", "t"):
            _arity(lineno, toks, 3)
            fields[kw] = _points(lineno, toks[1:])[0]
        elif kw == "assign":
            pts = _points(lineno, toks[1:])
            if len(pts) % 2:
                raise ParseError(lineno, toks[0][0], "assign needs start/target pairs")
            fields["assignment"] = tuple(zip(pts[::2], pts[1::2]))
        elif kw == "provenance":
            provenance.append(" ".join(t for _, t in toks[1:]))
        else:
            raise ParseError(lineno, toks[0][0], f"unknown record {kw!r}")
    if not units_seen:
        raise ParseError(1, 1, "missing 'units half' declaration")
    if bounds is None or robots is None:
        raise ParseError(1, 1, "missing 'bounds' or 'robots' record")
    try:
        inst = Instance(bounds[0], bounds[1], robots, tuple(obstacles), tuple(points))
    except InstanceError as exc:
        raise ParseError(1, 1, str(exc)) from None
    question = None
    if variant is not None:
        question = Question(variant, **fields)
    elif fields:
        raise ParseError(1, 1, "configuration records without a 'question' record")
    return InstanceDocument(inst, question, tuple(provenance))


def _fmt(points: Iterable[Point]) -> str:
    return " ".join(f"{x} {y}" for x, y in points)


def serialize_instance(doc: InstanceDocument) -> str:
    inst = doc.instance
    lines = [f"format {INSTANCE_FORMAT} {VERSION}", "units half",
             f"bounds {inst.width} {inst.height}", f"robots {inst.robots}"]
    lines += [f"obstacle {_fmt(poly)}" for poly in inst.obstacles]
    lines += [f"point {x} {y}" for x, y in inst.points]
    q = doc.question
    if q is not None:
        lines.append(f"question {q.variant}")
        if q.S:
            lines.append(f"S {_fmt(q.S)}")
        if q.T:
            lines.append(f"T {_fmt(q.T)}")
        if q.s is not None:
            lines.append(f"s {_fmt([q.s])}")
        if q.t is not None:
            lines.append(f"t {_fmt([q.t])}")
        if q.assignment:
            lines.append("assign " + " ".join(_fmt(pair) for pair in q.assignment))
    lines += [f"provenance {p}" for p in doc.provenance]
    return "\n".join(lines) + "\n"


# ---- grid embeddings -------------------------------------------------------

EMBEDDING_FORMAT = "grid-embedding"


def serialize_embedding(emb: GridEmbedding) -> str:
    lines = [f"format {EMBEDDING_FORMAT} {VERSION}"]
    lines += serialize_graph(emb.host).splitlines()[1:]
    lines += [f"place {v} {x} {y}" for v, (x, y) in emb.layout]
    lines += [f"path {e} {' '.join(vs)}" for e, vs in emb.paths]
    return "\n".join(lines) + "\n"


def parse_embedding(text: str) -> GridEmbedding:
    graph_lines = [f"format {GRAPH_FORMAT} {VERSION}"]
    layout, paths = {}, {}
    for lineno, toks in _records(text, EMBEDDING_FORMAT):
        kw = toks[0][1]
        if kw in ("vertex", "edge"):
            graph_lines.append(" ".join(t for _, t in toks))
        elif kw == "place":
            _arity(lineno, toks, 4)
            layout[toks[1][1]] = (_int(lineno, *toks[2]), _int(lineno, *toks[3]))
        elif kw == "path":
            _arity(lineno, toks, 3, 10 ** 6)
            paths[toks[1][1]] = tuple(t for _, t in toks[2:])
        else:
            raise ParseError(lineno, toks[0][0], f"unknown record {kw!r}")
    host = parse_graph("\n".join(graph_lines), validate=False)
    connectors = frozenset(v.id for v in host.vertices if v.kind == "CONNECTOR")
    return GridEmbedding(host, tuple(sorted(layout.items(), key=lambda kv: natural_key(kv[0]))),
                         tuple(sorted(paths.items(), key=lambda kv: natural_key(kv[0]))), connectors)
