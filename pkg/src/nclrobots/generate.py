"""Seeded random planar cubic AND/OR constraint graphs and questions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .ncl import AND, OR, ConstraintGraph, Orientation, enumerate_valid_orientations, validate_graph


def planar_cubic(n: int, rng: random.Random) -> nx.Graph:
    """A simple planar 3-regular graph on ``n`` (even, >= 4) vertices.

    Start from K4 and repeatedly split two edges of one face, joining the
    two new vertices across that face.
    """
    if n < 4 or n % 2:
        raise ValueError("planar cubic graphs need an even vertex count >= 4")
    g = nx.complete_graph(4)
    while g.number_of_nodes() < n:
        ok, emb = nx.check_planarity(g)
        assert ok
        u, v = rng.choice(sorted(g.edges()))
        if rng.random() < 0.5:
            u, v = v, u
        face = emb.traverse_face(u, v)
        sides = list(zip(face, face[1:] + face[:1]))
        (a1, b1), (a2, b2) = rng.sample(sides, 2)
        x, y = g.number_of_nodes(), g.number_of_nodes() + 1
        g.remove_edge(a1, b1)
        g.remove_edge(a2, b2)
        g.add_edges_from([(a1, x), (x, b1), (a2, y), (y, b2), (x, y)])
    return g


def label(g: nx.Graph, rng: random.Random, and_share: float = 0.5) -> ConstraintGraph:
    """Turn vertex-disjoint cycles into AND vertices with weight-1 cycle edges; the rest are OR."""
    cycles = [c for c in nx.simple_cycles(g) if len(c) >= 3]
    rng.shuffle(cycles)
    used: set = set()
    chosen = []
    target = and_share * g.number_of_nodes()
    for c in cycles:
        if len(used) >= target:
            break
        if used.isdisjoint(c) and len(used) + len(c) <= max(target, 3) + 2:
            chosen.append(c)
            used.update(c)
    light = set()
    for c in chosen:
        for a, b in zip(c, c[1:] + c[:1]):
            light.add(frozenset((a, b)))
    vertices = [(f"v{k}", AND if k in used else OR) for k in sorted(g.nodes)]
    edges = []
    for i, (a, b) in enumerate(sorted(tuple(sorted(e)) for e in g.edges())):
        edges.append((f"e{i}", f"v{a}", f"v{b}", 1 if frozenset((a, b)) in light else 2))
    cg = ConstraintGraph.build(vertices, edges)
    problems = validate_graph(cg)
    if problems:
        raise AssertionError(problems)
    return cg


def random_graph(seed: int, vertices: int, and_share: Optional[float] = None) -> ConstraintGraph:
    rng = random.Random(seed)
    share = rng.choice((0.0, 0.5, 1.0)) if and_share is None else and_share
    return label(planar_cubic(vertices, rng), rng, share)


def k4(kinds: str = "OOOO") -> ConstraintGraph:
    """K4 with the given kinds; ``A`` vertices must form a triangle or the full 4-cycle."""
    g = nx.complete_graph(4)
    ands = [k for k, c in enumerate(kinds) if c == "A"]
    light = set()
    if len(ands) == 3:
        light = {frozenset(p) for p in ((ands[0], ands[1]), (ands[1], ands[2]), (ands[0], ands[2]))}
    elif len(ands) == 4:
        light = {frozenset(p) for p in ((0, 1), (1, 2), (2, 3), (3, 0))}
    elif ands:
        raise ValueError("K4 admits 0, 3 or 4 AND vertices")
    vertices = [(f"v{k}", AND if c == "A" else OR) for k, c in enumerate(kinds)]
    edges = [(f"e{i}", f"v{a}", f"v{b}", 1 if frozenset((a, b)) in light else 2)
             for i, (a, b) in enumerate(sorted(g.edges()))]
    return ConstraintGraph.build(vertices, edges)


@dataclass(frozen=True)
class QuestionCase:
    problem: str
    params: tuple


def random_cases(g: ConstraintGraph, rng: random.Random, count: int, problem: str,
                 orientation_cap: int = 24) -> list[QuestionCase]:
    """Random NCL questions on ``g`` for one problem kind."""
    orients = list(enumerate_valid_orientations(g, orientation_cap))
    if not orients:
        return []
    out = []
    for _ in range(count):
        if problem == "f2f":
            out.append(QuestionCase(problem, (rng.choice(orients), rng.choice(orients))))
        elif problem == "f2e":
            out.append(QuestionCase(problem, (rng.choice(orients), rng.choice(g.edge_ids))))
        else:
            e1, e2 = rng.choice(g.edges), rng.choice(g.edges)
            out.append(QuestionCase(problem, ((e1.id, rng.choice((e1.u, e1.v))),
                                              (e2.id, rng.choice((e2.u, e2.v))))))
    return out


def orientation_of(g: ConstraintGraph, rng: random.Random) -> Optional[Orientation]:
    orients = list(enumerate_valid_orientations(g))
    return rng.choice(orients) if orients else None

