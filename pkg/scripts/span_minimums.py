"""Smallest octahedral system per number of covered classes, next to k(n-2)+2.

    python scripts/span_minimums.py --n 2 3 4 --samples 20000
"""

import argparse

from colourdepth.gf2 import DEFAULT_SPAN_BUDGET, enumerate_minimums
from colourdepth.octahedral import cardinality_lower_bound
from colourdepth.rng import DEFAULT_SEED


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--budget", type=int, default=DEFAULT_SPAN_BUDGET)
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for n in args.n:
        rep = enumerate_minimums(n, args.budget, args.samples, args.seed, args.workers)
        mode = "exhaustive" if rep.exhaustive else f"{rep.visited} samples"
        print(f"n={n} rank={rep.rank} ({mode})")
        for e in rep.per_k.values():
            bound = cardinality_lower_bound(n, e.k)
            tag = "tight" if e.minimum == bound and e.exhaustive else ""
            print(f"  k={e.k}: min {e.minimum:>4}  bound {bound:>4}  {tag}")


if __name__ == "__main__":
    main()
