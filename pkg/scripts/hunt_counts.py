"""Count totally real generators of small house per degree, with timings.

    python3 scripts/hunt_counts.py --max-degree 4 [--bound 2+sqrt6] [--reducible]
"""

import argparse
import time

from sosfields.cli import _parse_bound
from sosfields.hunt import HuntJob, count


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--bound", default="2+sqrt6")
    ap.add_argument("--reducible", action="store_true", help="also count reducible polynomials")
    args = ap.parse_args()
    bound = _parse_bound(args.bound)
    print(f"{'degree':>6} {'count':>10} {'seconds':>9}")
    for d in range(1, args.max_degree + 1):
        t = time.perf_counter()
        n = count(HuntJob(d, bound, irreducible_only=not args.reducible))
        print(f"{d:>6} {n:>10} {time.perf_counter() - t:>9.1f}", flush=True)


if __name__ == "__main__":
    main()
