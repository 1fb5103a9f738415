"""Compare the ring-hub OR with the three-position OR.

The three-position hub meets the three-position bound for its special robot
but leaves inside-sets whose states are disconnected, which blocks legal
reversals once several gadgets interact. The ring hub needs four positions
and has no such split.
"""

from nclrobots import gadgets
from nclrobots.corpus import CorpusConfig, run_corpus


def main():
    for name in ("or", "or-three"):
        sem = gadgets.verify_gadget_semantics(gadgets.OR, template=name)
        pairs = gadgets.Report()
        for left, side, right in gadgets.connected_pairs(name):
            pairs = pairs.merged(gadgets.verify_structural_lemmas(left, side, right))
        run = run_corpus(CorpusConfig(k4_labelings=("OOOO", "AAAO"), random_graphs=0,
                                      cases_per_problem=12, or_template=name))
        print(f"{name:9s} truth-table={'ok' if sem.ok else 'FAILED'} hidden-splits={len(sem.warnings)} "
              f"special-positions={dict(pairs.stats)['special_max']} "
              f"crosscheck disagreements={len(run.disagreements)}/{len(run.results)}")


if __name__ == "__main__":
    main()
