import random

import pytest
from hypothesis import given, strategies as st

from nclrobots.generate import k4, random_graph
from nclrobots.ncl import (AND, CONNECTOR, OR, ConstraintGraph, GraphFormatError, Orientation,
                           PreconditionError, enumerate_valid_orientations, legal_moves, orientation_is_valid,
                           replay, solve_edge_to_edge, solve_full_to_edge, solve_full_to_full, validate_graph)

import oracles

GRAPHS = [k4("OOOO"), k4("AAAO"), k4("OAAA"), random_graph(5, 6), random_graph(0, 6)]


def test_and_or_weight_rules():
    assert validate_graph(k4("OOOO")) == []
    assert validate_graph(k4("AAAO")) == []
    bad = ConstraintGraph.build([("a", AND), ("b", OR), ("c", OR), ("d", OR)],
                                [("e1", "a", "b", 2), ("e2", "a", "c", 2), ("e3", "a", "d", 2),
                                 ("e4", "b", "c", 2), ("e5", "c", "d", 2), ("e6", "b", "d", 2)])
    assert any("AND weight multiset" in p for p in validate_graph(bad))


def test_connector_rules():
    g = ConstraintGraph.build([("x", CONNECTOR), ("a", OR), ("b", OR)],
                              [("e1", "a", "x", 2), ("e2", "x", "b", 1)])
    assert any("CONNECTOR weight multiset" in p for p in validate_graph(g))


def test_duplicate_ids_rejected():
    with pytest.raises(GraphFormatError):
        ConstraintGraph.build([("a", OR), ("a", OR)], [])
    with pytest.raises(GraphFormatError):
        ConstraintGraph.build([("a", OR)], [("e", "a", "zz", 2)])


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: "".join(v.kind[0] for v in g.vertices))
def test_enumeration_matches_brute_force(g):
    got = {o.heads for o in enumerate_valid_orientations(g)}
    want = {tuple(sorted(h.items(), key=lambda kv: int(kv[0][1:]))) for h in oracles.all_orientations(g)
            if oracles.inflow_ok(g, h)}
    assert got == want


def test_all_and_k4_has_no_valid_orientation():
    assert list(enumerate_valid_orientations(k4("AAAA"))) == []


@given(st.integers(0, 10_000), st.sampled_from(GRAPHS[:4]))
def test_solvers_agree_with_closure(seed, g):
    rng = random.Random(seed)
    orients = list(enumerate_valid_orientations(g))
    a, b = rng.choice(orients), rng.choice(orients)
    ok, moves = solve_full_to_full(g, a, b)
    assert ok == oracles.ncl_f2f(g, a.as_dict(), b.as_dict())
    if ok:
        assert replay(g, a, moves)[-1] == b
    e = rng.choice(g.edges)
    ok, moves = solve_full_to_edge(g, a, e.id)
    assert ok == oracles.ncl_f2e(g, a.as_dict(), e.id)
    if ok:
        assert replay(g, a, moves)[-1].head(e.id) != a.head(e.id)
    e1, e2 = rng.choice(g.edges), rng.choice(g.edges)
    first, second = (e1.id, rng.choice((e1.u, e1.v))), (e2.id, rng.choice((e2.u, e2.v)))
    assert solve_edge_to_edge(g, first, second) == oracles.ncl_e2e(g, first, second)


def test_legal_moves_keep_validity(k4_or):
    for o in enumerate_valid_orientations(k4_or):
        for eid in legal_moves(k4_or, o):
            e = k4_or.edge(eid)
            flipped = o.with_head(eid, e.u if o.head(eid) == e.v else e.v)
            assert orientation_is_valid(k4_or, flipped)


def test_replay_rejects_illegal_move(k4_and):
    o = next(iter(enumerate_valid_orientations(k4_and)))
    stuck = [e.id for e in k4_and.edges if e.id not in legal_moves(k4_and, o)]
    assert stuck
    with pytest.raises(PreconditionError):
        replay(k4_and, o, [stuck[0]])


def test_invalid_source_is_a_precondition_error(k4_and):
    everything_to_v0 = Orientation.of({e.id: e.u if e.u == "v0" else e.v for e in k4_and.edges})
    assert not orientation_is_valid(k4_and, everything_to_v0)
    with pytest.raises(PreconditionError):
        solve_full_to_full(k4_and, everything_to_v0, everything_to_v0)
