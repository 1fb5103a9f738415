"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""

import itertools
import random
import time

import pytest

from nclrobots import gadgets
from nclrobots.corpus import CorpusConfig, run_corpus
from nclrobots.embed import check_embedding, embed, lift_orientation, project_orientation
from nclrobots.generate import random_graph
from nclrobots.motion import (replay_plan, solve_labeled, solve_multi_to_multi, solve_multi_to_single,
                              solve_multi_to_single_restricted, solve_single_to_single)
from nclrobots.ncl import enumerate_valid_orientations
from nclrobots.reducer import F2F, LABELED, M2M, PROBLEMS, compile_embedding

import oracles
from conftest import small_instance
from geometry import geometry_violations

LINES: dict[int, str] = {}

CROSSCHECK_MIN_CASES = 200
CROSSCHECK_SECONDS = 30 * 60
GADGET_SECONDS = 60
AUDIT_GRAPHS = 100
AUDIT_MAX_VERTICES = 20
AUDIT_ORIENTATIONS = 2000
LAW_INSTANCES = 60


def record(n: int, ok: bool, detail: str):
    LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    assert ok, LINES[n]


@pytest.fixture(scope="module")
def corpus():
    return run_corpus(CorpusConfig())


def test_criterion_1_truth_tables():
    worst = 0.0
    problems = []
    variants = 0
    for kind in (gadgets.CONNECTOR, gadgets.AND, gadgets.OR):
        for g in gadgets.gadget_variants(kind):
            t = time.perf_counter()
            rep = gadgets.check_gadget(g)
            worst = max(worst, time.perf_counter() - t)
            problems += rep.problems
            variants += 1
    record(1, not problems and worst < GADGET_SECONDS,
           f"{variants} gadget variants, {len(problems)} deviating states, slowest {worst:.2f}s")


def test_criterion_2_structural_lemmas():
    total = gadgets.Report()
    for left, side, right in gadgets.connected_pairs():
        total = total.merged(gadgets.verify_structural_lemmas(left, side, right))
    stats = dict(total.stats)
    other = [p for p in total.problems if "(special)" not in p]
    record(2, total.ok, f"{stats['pairs']} connected pairs, {len(total.problems)} violations "
                        f"({len(other)} not about the special robot), "
                        f"special robot uses up to {stats['special_max']} positions")


def test_criterion_3_or_exclusion():
    reachable_full = 0
    states = 0
    for g in gadgets.gadget_variants(gadgets.OR):
        sides = frozenset(s for s, _ in g.ports)
        sg = gadgets.enumerate_gadget_states(g, {s: gadgets.FREE for s in sides})
        states += len(sg.nodes)
        reachable_full += sum(gadgets.inside_set(sg, n) == sides for n in sg.nodes)
    record(3, reachable_full == 0 and states > 0,
           f"{states} reachable OR states, {reachable_full} with all three edge robots inside")


def test_criterion_4_crosscheck(corpus):
    per = {p: corpus.count(p) for p in PROBLEMS}
    bad = corpus.disagreements
    ok = (len(corpus.results) >= CROSSCHECK_MIN_CASES and all(per.values()) and not bad
          and corpus.seconds < CROSSCHECK_SECONDS)
    record(4, ok, f"{len(corpus.results)} cases {per} on {len(corpus.graphs)} graphs, "
                  f"{len(bad)} disagreements or rejected witnesses, {corpus.seconds:.0f}s")


def test_criterion_5_labeled(corpus):
    f2f = [r for _, r in corpus.results if r.problem == F2F]
    same = [dict(r.motion).get(LABELED) == dict(r.motion).get(M2M) is not None for r in f2f]
    record(5, bool(f2f) and all(same), f"labeled equals unlabeled on {sum(same)}/{len(f2f)} full-to-full cases")


def test_criterion_6_embedding_audit():
    sizes = range(4, AUDIT_MAX_VERTICES + 1, 2)
    violations = round_trips = failures = 0
    for k in range(AUDIT_GRAPHS):
        g = random_graph(k, sizes[k % len(sizes)])
        emb = embed(g)
        violations += len(check_embedding(g, emb))
        for o in itertools.islice(enumerate_valid_orientations(g, cap=len(g.edges)), AUDIT_ORIENTATIONS):
            back, _ = project_orientation(emb, lift_orientation(emb, o))
            round_trips += 1
            failures += back != o
    record(6, violations == 0 and failures == 0,
           f"{AUDIT_GRAPHS} graphs, {violations} violations, {failures}/{round_trips} failed round trips")


def test_criterion_7_geometry(corpus):
    problems = []
    for entry in corpus.graphs:
        problems += geometry_violations(compile_embedding(entry.emb).assembly)
    record(7, not problems, f"{len(corpus.graphs)} generated instances, {len(problems)} geometry violations")


def _laws(inst, rng) -> list[str]:
    G = oracles.motion_graph(inst)
    GL = oracles.motion_graph(inst, labeled=True)
    nodes = sorted(G.nodes, key=sorted)
    S, T = sorted(rng.choice(nodes)), sorted(rng.choice(nodes))
    centers, _ = oracles.free_centers(inst)
    t = rng.choice(centers)
    s = rng.choice(S)
    out = []
    m2m, plan = solve_multi_to_multi(inst, S, T)
    shuffled = list(S)
    rng.shuffle(shuffled)
    if solve_multi_to_multi(inst, shuffled, T)[0] != m2m:
        out.append("m2m depends on robot order")
    if m2m and sorted(replay_plan(inst, S, plan)[-1]) != sorted(T):
        out.append("m2m witness does not reach T")
    if m2m != oracles.oracle_m2m(G, S, T):
        out.append("m2m differs from closure")
    m2s, plan = solve_multi_to_single(inst, S, t)
    if m2s and t not in replay_plan(inst, S, plan)[-1]:
        out.append("m2s witness misses t")
    if m2s != oracles.oracle_m2s(G, S, t):
        out.append("m2s differs from closure")
    m2sr, plan = solve_multi_to_single_restricted(inst, S, s, t)
    if m2sr:
        replay_plan(inst, S, plan)
    s2s = solve_single_to_single(inst, s, t)
    if s2s != oracles.oracle_s2s(G, s, t):
        out.append("s2s differs from closure")
    if (m2sr and not m2s) or (m2s and not s2s):
        out.append("m2sr => m2s => s2s broken")
    perm = list(T)
    rng.shuffle(perm)
    assignment = dict(zip(S, perm))
    lab, plan = solve_labeled(inst, S, T, assignment)
    if lab and not m2m:
        out.append("labeled yes but unlabeled no")
    if lab:
        replay_plan(inst, S, plan)
    # relabelling robots consistently leaves the labeled answer unchanged
    order = list(range(len(S)))
    rng.shuffle(order)
    if solve_labeled(inst, [S[i] for i in order], T, assignment)[0] != lab:
        out.append("labeled depends on robot order")
    if lab != oracles.oracle_labeled(GL, S, T, assignment):
        out.append("labeled differs from closure")
    if m2sr != oracles.oracle_m2sr(GL, S, s, t):
        out.append("m2sr differs from closure")
    return out


def test_criterion_8_solver_laws():
    rng = random.Random(2024)
    problems = []
    for _ in range(LAW_INSTANCES):
        problems += _laws(small_instance(rng), rng)
    record(8, not problems, f"{LAW_INSTANCES} instances, {len(problems)} law violations {sorted(set(problems))}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
