import itertools

import pytest
from hypothesis import given, settings, strategies as st

from nclrobots.embed import (AREA_CONSTANT, PlanarityError, check_embedding, embed, layout_area, lift_orientation,
                             project_orientation)
from nclrobots.generate import k4, random_graph
from nclrobots.ncl import OR, ConstraintGraph, PreconditionError, enumerate_valid_orientations, orientation_is_valid


def test_k4_embeds_cleanly(k4_or):
    emb = embed(k4_or)
    assert check_embedding(k4_or, emb) == []
    assert layout_area(emb) <= AREA_CONSTANT * len(k4_or.vertices) ** 2


def test_host_vertices_sit_on_distinct_points_with_unit_edges(k4_and):
    emb = embed(k4_and)
    pos = emb.position
    assert len(set(pos.values())) == len(pos)
    for e in emb.host.edges:
        (ax, ay), (bx, by) = pos[e.u], pos[e.v]
        assert abs(ax - bx) + abs(ay - by) == 1


def test_connectors_inherit_path_weight(k4_and):
    emb = embed(k4_and)
    for eid, path in emb.paths:
        w = k4_and.edge(eid).weight
        for c in path[1:-1]:
            assert emb.host.vertex(c).min_flow == w


@settings(max_examples=15)
@given(st.integers(0, 500), st.sampled_from([4, 6, 8, 10]))
def test_random_cubic_graphs_audit_clean(seed, n):
    g = random_graph(seed, n)
    emb = embed(g)
    assert check_embedding(g, emb) == []
    for o in itertools.islice(enumerate_valid_orientations(g, cap=len(g.edges)), 200):
        lifted = lift_orientation(emb, o)
        assert orientation_is_valid(emb.host, lifted)
        back, mixed = project_orientation(emb, lifted)
        assert back == o and not mixed


def test_check_embedding_catches_tampering(k4_or):
    emb = embed(k4_or)
    eid, path = emb.paths[0]
    broken = type(emb)(emb.host, emb.layout, ((eid, path[:-1]),) + emb.paths[1:], emb.connectors)
    assert check_embedding(k4_or, broken)


def test_nonplanar_rejected():
    # K3,3 with OR vertices
    left, right = ["a", "b", "c"], ["x", "y", "z"]
    edges = [(f"e{i}", u, v, 2) for i, (u, v) in enumerate(itertools.product(left, right))]
    g = ConstraintGraph.build([(v, OR) for v in left + right], edges)
    with pytest.raises(PlanarityError):
        embed(g)


def test_invalid_graph_rejected():
    g = ConstraintGraph.build([("a", OR), ("b", OR)], [("e0", "a", "b", 2)])
    with pytest.raises(PreconditionError):
        embed(g)


def test_embedding_is_deterministic():
    g = random_graph(3, 8)
    assert embed(g) == embed(g)
