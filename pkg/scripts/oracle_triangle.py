"""Tabulate every route to the periodic (ka, kb) count and flag disagreements.

    python scripts/oracle_triangle.py --cases 3,2,2 2,3,2 --max-enum 9
"""

import argparse
import time

from pfgrammar.counting import periodic_report


def parse_case(text):
    a, b, k = (int(v) for v in text.split(","))
    return a, b, k


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="+", type=parse_case,
                    default=[(3, 2, 1), (3, 2, 2), (2, 3, 1), (2, 3, 2), (4, 3, 1), (4, 3, 2),
                             (5, 2, 1), (5, 2, 2), (3, 2, 3), (2, 3, 3)])
    ap.add_argument("--max-enum", type=int, default=8)
    ap.add_argument("--max-order", type=int, default=9)
    args = ap.parse_args()

    cols = ["specsum", "scaled/b^kb", "egf", "grammar", "bruteforce"]
    print(f"{'(a,b,k)':>10} " + " ".join(f"{c:>12}" for c in cols) + "  verdict   secs")
    bad = 0
    for a, b, k in args.cases:
        t0 = time.perf_counter()
        rep = periodic_report(a, b, k, max_enum=args.max_enum, max_order=args.max_order)
        secs = time.perf_counter() - t0
        vals = {v for v in rep.values() if v is not None}
        ok = len(vals) == 1
        bad += not ok
        cells = " ".join(f"{'-' if rep[c] is None else rep[c]:>12}" for c in cols)
        print(f"{f'({a},{b},{k})':>10} {cells}  {'AGREE' if ok else 'DISAGREE':8} {secs:6.2f}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
