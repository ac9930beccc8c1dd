"""Coefficient tables read off the tree, planted-forest and Faa di Bruno grammars.

Each table is compared against its closed form; mismatches are marked ``!``.
"""

import argparse

from pfgrammar.grammar import (
    cycle_type_count,
    faa_di_bruno_coefficients,
    planted_forest_closed_form,
    planted_forest_coefficients,
    tree_coefficient_table,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=6, help="largest derivative order")
    args = ap.parse_args()

    print("D^n(S) under G, coefficient of A^(n+k) S^(n+1); row sums are (n+1)^(n-1)")
    for n in range(1, args.n + 1):
        row = tree_coefficient_table(n)
        total = sum(row.values())
        mark = "" if total == (n + 1) ** (n - 1) else " !"
        print(f"  n={n}: {[row[k] for k in sorted(row)]} sum={total}{mark}")

    print("\nD^n(z)|y=1 under H, coefficient of x^k w^(n-k)")
    for n in range(1, args.n + 1):
        row = planted_forest_coefficients(n)
        bad = [k for k, v in row.items() if v != planted_forest_closed_form(n, k)]
        print(f"  n={n}: {[row[k] for k in sorted(row)]}{' !' + str(bad) if bad else ''}")

    print("\nD^k(f0) under F, coefficients by cycle type")
    for k in range(1, min(args.n, 7) + 1):
        table = faa_di_bruno_coefficients(k)
        bad = [t for t, c in table.items() if c != cycle_type_count(t)]
        print(f"  k={k}: {len(table)} types, total {sum(table.values())}{' !' if bad else ''}")


if __name__ == "__main__":
    main()
