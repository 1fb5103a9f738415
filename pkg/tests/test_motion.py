import random

import pytest
from hypothesis import given, strategies as st

from nclrobots.motion import (Inconclusive, Instance, InstanceError, PathPlan, is_free, legal_single_moves,
                              replay_plan, solve_labeled, solve_multi_to_multi, solve_multi_to_single,
                              solve_multi_to_single_restricted, solve_single_to_single, workspace)

import oracles
from conftest import instances, small_instance


def corridor(length: int = 8, robots: int = 2) -> Instance:
    """A one-robot-wide horizontal corridor of ``length`` half-units."""
    return Instance(length, 2, robots)


def test_rectilinear_polygons_only():
    with pytest.raises(InstanceError):
        Instance(4, 4, 1, (((0, 0), (2, 2), (0, 2)),))
    with pytest.raises(InstanceError):
        Instance(0, 4, 1)


def test_touching_is_allowed_overlap_is_not():
    inst = corridor(8, 2)
    assert is_free(inst, [(1, 1), (3, 1)])
    assert not is_free(inst, [(1, 1), (2, 1)])


def test_corridor_robots_cannot_pass():
    inst = corridor(8, 2)
    assert solve_multi_to_multi(inst, [(1, 1), (3, 1)], [(5, 1), (7, 1)])[0]
    assert solve_labeled(inst, [(1, 1), (3, 1)], [(5, 1), (7, 1)], {(1, 1): (5, 1), (3, 1): (7, 1)})[0]
    assert not solve_labeled(inst, [(1, 1), (3, 1)], [(1, 1), (3, 1)], {(1, 1): (3, 1), (3, 1): (1, 1)})[0]
    assert solve_multi_to_single(inst, [(1, 1), (3, 1)], (7, 1))[0]
    assert not solve_multi_to_single_restricted(inst, [(1, 1), (3, 1)], (1, 1), (7, 1))[0]


def test_point_obstacle_blocks_interior_only():
    inst = Instance(6, 2, 1, points=((3, 1),))
    ws = workspace(inst)
    assert ws.square_free((2, 1)) and ws.square_free((4, 1))
    assert not ws.square_free((3, 1))
    assert not solve_single_to_single(inst, (1, 1), (5, 1))


def test_obstacle_pixels_match_ray_casting():
    L = ((0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4))
    inst = Instance(6, 6, 1, (L,))
    ws = workspace(inst)
    got = {(i, j) for i in range(6) for j in range(6) if ws.pixel_blocked(i, j)}
    assert got == oracles.blocked_pixels(inst)


def test_state_cap_is_reported():
    inst = Instance(8, 8, 3)
    with pytest.raises(Inconclusive):
        solve_multi_to_multi(inst, [(1, 1), (3, 1), (5, 1)], [(7, 7), (5, 7), (3, 7)], cap=10)


def test_replay_rejects_collisions():
    inst = corridor(8, 2)
    with pytest.raises(ValueError):
        replay_plan(inst, [(1, 1), (3, 1)], PathPlan((((1, 1), "E"),)))


def _pick(rng, G):
    nodes = sorted(G.nodes, key=sorted)
    return sorted(rng.choice(nodes))


@given(instances(), st.integers(0, 10_000))
def test_unlabeled_solvers_match_closure(inst, seed):
    rng = random.Random(seed)
    G = oracles.motion_graph(inst)
    S, T = _pick(rng, G), _pick(rng, G)
    centers, _ = oracles.free_centers(inst)
    t = rng.choice(centers)
    ok, plan = solve_multi_to_multi(inst, S, T)
    assert ok == oracles.oracle_m2m(G, S, T)
    if ok:
        assert sorted(replay_plan(inst, S, plan)[-1]) == sorted(T)
    ok, plan = solve_multi_to_single(inst, S, t)
    assert ok == oracles.oracle_m2s(G, S, t)
    if ok:
        assert t in replay_plan(inst, S, plan)[-1]
    s = rng.choice(S)
    assert solve_single_to_single(inst, s, t) == oracles.oracle_s2s(G, s, t)


@given(instances(max_robots=3), st.integers(0, 10_000))
def test_labeled_solvers_match_closure(inst, seed):
    rng = random.Random(seed)
    G = oracles.motion_graph(inst)
    GL = oracles.motion_graph(inst, labeled=True)
    S, T = _pick(rng, G), _pick(rng, G)
    perm = list(T)
    rng.shuffle(perm)
    assignment = dict(zip(S, perm))
    assert solve_labeled(inst, S, T, assignment)[0] == oracles.oracle_labeled(GL, S, T, assignment)
    s = rng.choice(S)
    centers, _ = oracles.free_centers(inst)
    t = rng.choice(centers)
    ok, plan = solve_multi_to_single_restricted(inst, S, s, t)
    assert ok == oracles.oracle_m2sr(GL, S, s, t)
    if ok:
        replay_plan(inst, S, plan)


@given(instances(), st.integers(0, 10_000))
def test_legal_moves_match_oracle_edges(inst, seed):
    rng = random.Random(seed)
    G = oracles.motion_graph(inst)
    S = _pick(rng, G)
    got = set()
    for r, d in legal_single_moves(inst, S):
        moved = list(S)
        dx, dy = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}[d]
        moved[r] = (S[r][0] + dx, S[r][1] + dy)
        got.add(frozenset(moved))
    assert got == set(G.neighbors(frozenset(S)))


def test_small_instance_generator_respects_limits():
    rng = random.Random(1)
    for _ in range(20):
        inst = small_instance(rng)
        assert inst.width <= 8 and inst.height <= 8 and inst.robots <= 4
