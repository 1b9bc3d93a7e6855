"""Survey of diagonal conic pairs in CP^2.

Tabulates b0(C) against the number of distinct singular members of the
pencil, and compares resolved reports with the resultant point count.

    python3 scripts/plane_survey.py --values -1 0 1 2
"""

import argparse
import itertools
from collections import Counter

from quadbetti.exactnum import bf_distinct_root_count
from quadbetti.oracle import point_count_cp2
from quadbetti.pencil import det_form, diagonal_pencil
from quadbetti.specseq import Status, analyze


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--values", type=int, nargs="+", default=[-1, 0, 1, 2])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cols = list(itertools.product(args.values, repeat=2))
    table = Counter()
    disagreements = []
    for trip in itertools.combinations_with_replacement(cols, 3):
        d0, d1 = [c[0] for c in trip], [c[1] for c in trip]
        if not any(d0) or not any(d1):
            continue
        p = diagonal_pencil(d0, d1)
        a = analyze(2, [p.Q0, p.Q1])
        det = det_form(p)
        roots = "inf" if det.is_zero else bf_distinct_root_count(det)
        r = a.report
        if r.status is Status.RESOLVED:
            b0 = str(r.betti_C[0])
        else:
            b0 = "/".join(str(c[0]) for _, c in r.candidates)
        table[(a.route, str(roots), b0, r.status.value)] += 1
        if a.route == "pencil" and r.status is Status.RESOLVED:
            pc = point_count_cp2(p.Q0, p.Q1, seed=args.seed)
            if not pc.infinite and r.betti_C != [pc.value, 0, 0, 0, 0]:
                disagreements.append((d0, d1, pc.value, r.betti_C))

    print(f"{'route':<7} {'roots':>5} {'b0(C)':>7} {'status':<10} {'pencils':>7}")
    for (route, roots, b0, status), k in sorted(table.items()):
        print(f"{route:<7} {roots:>5} {b0:>7} {status:<10} {k:>7}")
    print(f"\noracle disagreements: {len(disagreements)}")
    for d in disagreements[:10]:
        print("  ", d)


if __name__ == "__main__":
    main()
