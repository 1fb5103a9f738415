"""Exhaustive gadget checks: truth tables for every variant and position counts on every connected pair."""

import argparse
import time

from nclrobots import gadgets


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--or-template", help="OR design to check (default: the ring hub)")
    ap.add_argument("--skip-pairs", action="store_true")
    args = ap.parse_args()
    for kind in (gadgets.CONNECTOR, gadgets.AND, gadgets.OR):
        t = time.perf_counter()
        rep = gadgets.verify_gadget_semantics(kind, template=args.or_template if kind == gadgets.OR else None)
        stats = dict(rep.stats)
        print(f"{kind:9s} {'ok' if rep.ok else 'FAILED'} variants={stats['gadgets']} states={stats['states']} "
              f"hidden-splits={len(rep.warnings)} {time.perf_counter() - t:.2f}s")
        for line in rep.problems[:10]:
            print("   ", line)
    if args.skip_pairs:
        return
    t = time.perf_counter()
    total = gadgets.Report()
    for left, side, right in gadgets.connected_pairs(args.or_template):
        total = total.merged(gadgets.verify_structural_lemmas(left, side, right))
    stats = dict(total.stats)
    print(f"pairs     {'ok' if total.ok else 'FAILED'} pairs={stats['pairs']} states={stats['states']} "
          f"largest-special={stats['special_max']} {time.perf_counter() - t:.2f}s")
    for line in sorted(set(total.problems))[:10]:
        print("   ", line)


if __name__ == "__main__":
    main()
