import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nclrobots.generate import k4, planar_cubic, random_cases, random_graph
from nclrobots.ncl import AND, validate_graph


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.sampled_from([4, 6, 8, 12, 20]))
def test_planar_cubic_is_simple_planar_and_cubic(seed, n):
    g = planar_cubic(n, random.Random(seed))
    assert g.number_of_nodes() == n
    assert all(d == 3 for _, d in g.degree())
    assert nx.check_planarity(g)[0]


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.sampled_from([4, 6, 8]))
def test_labelled_graphs_are_legal(seed, n):
    g = random_graph(seed, n)
    assert validate_graph(g) == []


def test_seeded_generation_is_reproducible():
    assert random_graph(7, 10) == random_graph(7, 10)


def test_odd_vertex_count_rejected():
    with pytest.raises(ValueError):
        planar_cubic(5, random.Random(0))


def test_k4_labelings():
    assert sum(v.kind == AND for v in k4("AAAO").vertices) == 3
    with pytest.raises(ValueError):
        k4("AOOO")


def test_random_cases_cover_problem(k4_or):
    rng = random.Random(0)
    for problem in ("f2f", "f2e", "e2e"):
        cases = random_cases(k4_or, rng, 5, problem)
        assert len(cases) == 5 and all(c.problem == problem for c in cases)
