"""Greedy search for low-depth configurations, several seeds per dimension.

    python scripts/tightness_search.py --dims 2 3 --seeds 5 --iterations 10000
"""

import argparse
import time

from colourdepth.geometry import depth_floor, minimize_depth_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--iterations", type=int, default=10_000)
    args = ap.parse_args()
    for d in args.dims:
        for seed in range(args.seeds):
            t0 = time.perf_counter()
            _, depth = minimize_depth_search(d, args.iterations, seed)
            print(f"d={d} seed={seed} depth={depth} floor={depth_floor(d)} ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
