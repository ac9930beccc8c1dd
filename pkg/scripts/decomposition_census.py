"""Split every (ka, kb)-parking function into blocks and tally by block lengths.

For each J the class size should equal multinomial(J) times the product of
the per-block counts ``(1 + j r)^(j-1)``, ``r = (a-1)/b``; the script prints
both columns.  Requires ``a = 1 mod b``.
"""

import argparse
from collections import Counter

from pfgrammar.counting import specsum_terms
from pfgrammar.parking import ab_threshold_vector, decompose_blocks, enumerate_u_parking, ones_count


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-a", type=int, default=3)
    ap.add_argument("-b", type=int, default=2)
    ap.add_argument("-k", type=int, default=2)
    ap.add_argument("--max-enum", type=int, default=8)
    args = ap.parse_args()
    a, b, k = args.a, args.b, args.k

    pfs = enumerate_u_parking(ab_threshold_vector(a, b, k * b), max_enum=args.max_enum)
    census, stray_ones = Counter(), 0
    for c in pfs:
        d = decompose_blocks(c, a, b, k)
        census[d.lengths] += 1
        stray_ones += ones_count(c) != ones_count(d.blocks[0])

    expected = dict(specsum_terms(a, b, k))
    print(f"(a,b,k)=({a},{b},{k}): {len(pfs)} parking functions")
    print(f"{'J':>14} {'observed':>10} {'formula':>10}")
    for J in sorted(expected):
        mark = "" if census[J] == expected[J] else "  !"
        print(f"{str(J):>14} {census[J]:>10} {str(expected[J]):>10}{mark}")
    print(f"sequences with ones outside block 1: {stray_ones}")


if __name__ == "__main__":
    main()
