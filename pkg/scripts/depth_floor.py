"""Colourful depth of random configurations against the d^2 + 1 floor.

    python scripts/depth_floor.py --dims 1 2 3 4 --trials 500
"""

import argparse
from collections import Counter

from colourdepth.geometry import depth_floor
from colourdepth.rng import DEFAULT_SEED
from colourdepth.verify import verify_depth_floor


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print(f"{'d':>3} {'floor':>6} {'min':>5} {'max':>5} {'violations':>11} {'non-general':>12}")
    for d in args.dims:
        rep = verify_depth_floor(d, args.trials, args.seed, args.workers)
        s = rep.stats
        kinds = Counter(v["kind"] for v in rep.violations)
        print(f"{d:>3} {depth_floor(d):>6} {s['min_depth']:>5} {s['max_depth']:>5} "
              f"{sum(kinds.values()):>11} {s['non_general_position']:>12}")


if __name__ == "__main__":
    main()
