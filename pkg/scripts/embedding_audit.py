"""Audit grid embeddings of seeded planar cubic graphs and the lift/project round trip."""

import argparse
import itertools
import time

from nclrobots.embed import check_embedding, embed, layout_area, lift_orientation, project_orientation
from nclrobots.generate import random_graph
from nclrobots.ncl import enumerate_valid_orientations


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=100)
    ap.add_argument("--max-vertices", type=int, default=20)
    ap.add_argument("--orientations", type=int, default=2000, help="round trips per graph")
    args = ap.parse_args()
    t = time.perf_counter()
    bad = round_trips = 0
    sizes = range(4, args.max_vertices + 1, 2)
    for k in range(args.graphs):
        n = sizes[k % len(sizes)]
        g = random_graph(k, n)
        emb = embed(g)
        problems = check_embedding(g, emb)
        for o in itertools.islice(enumerate_valid_orientations(g, cap=len(g.edges)), args.orientations):
            back, _ = project_orientation(emb, lift_orientation(emb, o))
            round_trips += 1
            if back != o:
                problems.append("project(lift(o)) != o")
        bad += bool(problems)
        if problems:
            print(f"seed {k} n={n}: {problems[:3]}")
        elif k % 10 == 0:
            print(f"seed {k} n={n}: host={len(emb.host.vertices)} area={layout_area(emb)}")
    print(f"graphs={args.graphs} with-violations={bad} round-trips={round_trips} {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
