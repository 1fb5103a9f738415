"""Run the seeded crosscheck corpus and print per-graph progress and the agreement summary."""

import argparse

from nclrobots.corpus import CorpusConfig, run_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=12, help="cases per problem per graph")
    ap.add_argument("--random-graphs", type=int, default=6)
    ap.add_argument("--probe-cap", type=int, default=50_000)
    ap.add_argument("--or-template")
    args = ap.parse_args()
    cfg = CorpusConfig(seed=args.seed, cases_per_problem=args.cases, random_graphs=args.random_graphs,
                       probe_cap=args.probe_cap, or_template=args.or_template)
    run = run_corpus(cfg, log=print)
    for line in run.skipped:
        print("skipped", line)
    for name, r in run.disagreements[:20]:
        print("DISAGREE", name, r.problem, "ncl", r.ncl, "motion", r.motion, *r.notes)
    labeled = [r for _, r in run.results if r.problem == "f2f"]
    same = sum(dict(r.motion).get("m2m") == dict(r.motion).get("labeled") for r in labeled)
    print(f"labeled vs unlabeled: {same}/{len(labeled)} agree")
    print(run.summary())


if __name__ == "__main__":
    main()
