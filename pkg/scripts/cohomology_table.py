"""Orders of C^n, Z^n, B^n and H^n for every catalog instance over F_p."""

import argparse

from parcoh.catalog import catalog_instances
from parcoh.cohomology import BudgetExceeded, enumerate_cohomology
from parcoh.linalg import GF


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--degrees", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--budget", type=int, default=200_000)
    args = ap.parse_args()
    print(f"{'instance':<40} n   |C|    |Z|   |B|  |H|")
    for entry in catalog_instances(GF(args.p)):
        for n in args.degrees:
            try:
                o = enumerate_cohomology(entry.action, n, args.budget).orders
            except BudgetExceeded:
                print(f"{entry.label:<40} {n}   over budget")
                continue
            print(f"{entry.label:<40} {n} {o['C']:>5} {o['Z']:>6} {o['B']:>5} {o['H']:>4}")


if __name__ == "__main__":
    main()
