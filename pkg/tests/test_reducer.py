import random
from dataclasses import replace

import pytest

from nclrobots.embed import embed, lift_orientation
from nclrobots.gadgets import EDGE
from nclrobots.generate import k4, random_cases
from nclrobots.motion import is_free, rect
from nclrobots.ncl import PreconditionError, enumerate_valid_orientations
from nclrobots.reducer import (E2E, F2E, F2F, LABELED, M2M, M2S, M2SR, S2S, Question, compile_embedding,
                               crosscheck, edge_slot, multiconfig_to_orientation, orientation_to_multiconfig,
                               reduce_graph)

from geometry import geometry_violations


@pytest.fixture(scope="module", params=["OOOO", "AAAO"])
def setup(request):
    g = k4(request.param)
    return g, embed(g)


def test_every_host_orientation_round_trips(setup):
    g, emb = setup
    inst = compile_embedding(emb).instance
    count = 0
    for o in enumerate_valid_orientations(emb.host, cap=len(emb.host.edges)):
        config = orientation_to_multiconfig(emb, o)
        assert is_free(inst, config)
        assert multiconfig_to_orientation(emb, config) == o
        count += 1
    assert count


def _interior(asm, cell):
    x0, y0 = 11 * cell[0] + asm.margin, 11 * cell[1] + asm.margin
    return {(x0 + 1 + i, y0 + 1 + j) for i in range(10) for j in range(10)}


def _square(c):
    return {(c[0] - 1, c[1] - 1), (c[0], c[1] - 1), (c[0] - 1, c[1]), (c[0], c[1])}


def test_edge_robot_sits_in_the_tail_cell(setup):
    g, emb = setup
    red = compile_embedding(emb)
    asm = red.assembly
    o = lift_orientation(emb, next(iter(enumerate_valid_orientations(g))))
    config = set(orientation_to_multiconfig(emb, o))
    for e in emb.host.edges:
        head = o.head(e.id)
        slot = edge_slot(red, e.id, head)
        assert slot in config
        assert not _square(slot) & _interior(asm, red.cell_of[head])
        assert _square(slot) & _interior(asm, red.cell_of[e.other(head)])


def test_invalid_orientation_rejected(setup):
    g, emb = setup
    o = lift_orientation(emb, next(iter(enumerate_valid_orientations(g))))
    for e in emb.host.edges:
        flipped = o.with_head(e.id, e.other(o.head(e.id)))
        try:
            orientation_to_multiconfig(emb, flipped)
        except PreconditionError:
            return
    pytest.fail("no single flip made the orientation invalid")


def test_reduction_questions_have_the_requested_variant(setup):
    g, emb = setup
    rng = random.Random(0)
    (case,) = random_cases(g, rng, 1, F2F)
    for variant in (M2M, LABELED):
        out = reduce_graph(g, F2F, case.params, variant, emb)
        assert out.question.variant == variant
        assert is_free(out.instance, out.question.S) and is_free(out.instance, out.question.T)
    (case,) = random_cases(g, rng, 1, F2E)
    for variant in (M2S, M2SR):
        out = reduce_graph(g, F2E, case.params, variant, emb)
        assert out.question.variant == variant and out.question.t is not None
    (case,) = random_cases(g, rng, 1, E2E)
    out = reduce_graph(g, E2E, case.params, S2S, emb)
    assert out.question.variant == S2S and out.provenance


def test_question_rejects_unknown_variant():
    with pytest.raises(ValueError):
        Question("teleport")


@pytest.mark.parametrize("problem", [F2F, F2E, E2E])
def test_crosscheck_agrees_on_k4(setup, problem):
    g, emb = setup
    rng = random.Random(1)
    for case in random_cases(g, rng, 4, problem):
        r = crosscheck(g, problem, case.params, emb=emb)
        assert r.agree and r.witnesses_ok, r


def test_generated_geometry(setup):
    g, emb = setup
    assert geometry_violations(compile_embedding(emb).assembly) == []


def test_geometry_audit_catches_blocked_doorway(setup):
    g, emb = setup
    asm = compile_embedding(emb).assembly
    port_robot = next(r for r in asm.robots if r.role == EDGE)
    x, y = port_robot.positions[0]
    extra = rect(x - 1, y - 1, x + 1, y + 1)
    tampered = replace(asm.instance, obstacles=asm.instance.obstacles + (extra,))

    class Tampered:
        instance = tampered
        margin = asm.margin
        gadget_at = asm.gadget_at
        robots = asm.robots
    assert geometry_violations(Tampered)


def test_alternate_or_design_breaks_a_known_case():
    g = k4("OOOO")
    emb = embed(g)
    rng = random.Random(0)
    bad = 0
    for problem in (F2F, F2E, E2E):
        for case in random_cases(g, rng, 12, problem):
            r = crosscheck(g, problem, case.params, emb=emb, or_template="or-three")
            bad += not (r.agree and r.witnesses_ok)
    assert bad > 0
