"""Seeded cross-validation corpus: NCL answers against motion answers on reduced instances."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import motion
from .embed import GridEmbedding, embed, lift_orientation
from .generate import k4, random_graph, random_cases
from .ncl import ConstraintGraph, enumerate_valid_orientations
from .reducer import PROBLEMS, CrosscheckResult, compile_embedding, crosscheck, orientation_to_multiconfig


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 0
    k4_labelings: tuple[str, ...] = ("OOOO", "AAAO", "AAOA", "AOAA", "OAAA")
    random_graphs: int = 6
    random_vertices: int = 6
    cases_per_problem: int = 12
    # a graph is admitted when every valid orientation's reachable set stays below this
    probe_cap: int = 50_000
    budget: int = motion.DEFAULT_STATE_CAP
    or_template: Optional[str] = None


@dataclass
class GraphEntry:
    name: str
    graph: ConstraintGraph
    emb: GridEmbedding
    states: int


@dataclass
class CorpusRun:
    config: CorpusConfig
    graphs: list[GraphEntry] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    results: list[tuple[str, CrosscheckResult]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def disagreements(self) -> list[tuple[str, CrosscheckResult]]:
        return [(n, r) for n, r in self.results if r.inconclusive or not (r.agree and r.witnesses_ok)]

    def count(self, problem: str) -> int:
        return sum(r.problem == problem for _, r in self.results)

    def summary(self) -> str:
        per = " ".join(f"{p}={self.count(p)}" for p in PROBLEMS)
        return (f"graphs={len(self.graphs)} skipped={len(self.skipped)} cases={len(self.results)} "
                f"({per}) disagreements={len(self.disagreements)} seconds={self.seconds:.1f}")


def probe_states(g: ConstraintGraph, emb: GridEmbedding, cap: int,
                 or_template: Optional[str] = None) -> Optional[int]:
    """Total reachable motion states over the components of all lifted orientations, or None past ``cap``."""
    red = compile_embedding(emb, or_template)
    ws = motion.workspace(red.instance)
    seen: set[int] = set()
    for o in enumerate_valid_orientations(g):
        start = ws.encode(orientation_to_multiconfig(emb, lift_orientation(emb, o), or_template))
        if start in seen:
            continue
        try:
            seen |= motion.reachable_masks(ws, start, cap=cap - len(seen))
        except motion.Inconclusive:
            return None
    return len(seen)


def candidate_graphs(cfg: CorpusConfig) -> Iterator[tuple[str, ConstraintGraph]]:
    for kinds in cfg.k4_labelings:
        yield f"k4-{kinds}", k4(kinds)
    for k in range(cfg.random_graphs):
        seed = cfg.seed * 1000 + k
        yield f"cubic{cfg.random_vertices}-s{seed}", random_graph(seed, cfg.random_vertices)


def admit_graphs(cfg: CorpusConfig, run: CorpusRun):
    for name, g in candidate_graphs(cfg):
        emb = embed(g)
        states = probe_states(g, emb, cfg.probe_cap, cfg.or_template)
        if states is None:
            run.skipped.append(f"{name}: more than {cfg.probe_cap} reachable states")
        elif states == 0:
            run.skipped.append(f"{name}: no valid orientation")
        else:
            run.graphs.append(GraphEntry(name, g, emb, states))


def run_corpus(cfg: CorpusConfig = CorpusConfig(), log=None) -> CorpusRun:
    t0 = time.perf_counter()
    run = CorpusRun(cfg)
    admit_graphs(cfg, run)
    rng = random.Random(cfg.seed)
    for entry in run.graphs:
        for problem in PROBLEMS:
            for case in random_cases(entry.graph, rng, cfg.cases_per_problem, problem):
                r = crosscheck(entry.graph, problem, case.params, cfg.budget, entry.emb, cfg.or_template)
                run.results.append((entry.name, r))
        if log:
            log(f"{entry.name}: host={len(entry.emb.host.vertices)} states={entry.states} "
                f"cases so far={len(run.results)}")
    run.seconds = time.perf_counter() - t0
    return run
