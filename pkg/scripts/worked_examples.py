"""Run the worked examples through the full pipeline and print their pages.

    python3 scripts/worked_examples.py [--format json]
"""

import argparse

from quadbetti.qparse import InputSpec, run

EXAMPLES = {
    "skew cubic and a line": (3, ["z0*z2 - z1^2", "z0*z3 - z1*z2"]),
    "point and a line": (2, ["z0^2 - z1^2", "2*z2*(z0 + z1)"]),
    "three points": (2, ["z0^2 - z1^2", "2*z0*(z1 + z2)"]),
    "four points": (2, ["z0^2 - z1^2", "z0^2 - z2^2"]),
    "smooth conic": (2, ["z0^2 + z1^2 + z2^2"]),
    "line pair": (2, ["z0^2 + z1^2"]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args()
    for name, (n, quadrics) in EXAMPLES.items():
        res = run(InputSpec(n=n, quadrics=quadrics, format=args.format, dump_pages=True))
        print(f"=== {name}: {' , '.join(quadrics)} in CP^{n}")
        print(res.output)
        print()


if __name__ == "__main__":
    main()
