"""Complete intersections of two diagonal quadrics: solver vs closed form.

    python3 scripts/complete_intersections.py --max-n 10
"""

import argparse
import time

from quadbetti.pencil import diagonal_pencil, profile
from quadbetti.specseq import closed_form_complete_intersection, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    print(f"{'n':>3} {'class':<22} {'status':<9} {'b_(n-2)':>7} {'match':>5} {'secs':>6}  betti(C)")
    for n in range(2, args.max_n + 1):
        t0 = time.perf_counter()
        pp = profile(diagonal_pencil([1] * (n + 1), list(range(n + 1))))
        r = solve(pp)
        dt = time.perf_counter() - t0
        ok = r.betti_C == closed_form_complete_intersection(n)
        print(f"{n:>3} {pp.classification.value:<22} {r.status.value:<9} {r.betti_C[n - 2]:>7} "
              f"{str(ok):>5} {dt:>6.2f}  {r.betti_C}")


if __name__ == "__main__":
    main()
