"""Scan x over a range of rationals for the (kV4)* family on k through <a>.

For each x with a partner xbar, print whether the pair is mutually inverse,
whether both tables are 2-cocycles, and whether the algebroid built on the
crossed product passes every check.
"""

import argparse
from fractions import Fraction

from parcoh.algebroid import build_algebroid, verify_algebroid
from parcoh.catalog import klein_twist
from parcoh.cohomology import klein_four_family, klein_four_partner
from parcoh.crossed_product import build_crossed_product
from parcoh.linalg import QQ


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--denominator", type=int, default=8)
    ap.add_argument("--numerators", type=int, nargs=2, default=(-4, 8), metavar=("LO", "HI"))
    ap.add_argument("--algebroid", action="store_true", help="also verify the algebroid axioms")
    args = ap.parse_args()
    lo, hi = args.numerators
    xs = sorted({Fraction(k, args.denominator) for k in range(lo, hi + 1)})
    print(f"{'x':>8} {'xbar':>8}  pair  cocycles  algebroid")
    for x in xs:
        xbar = klein_four_partner(x)
        if xbar is None:
            print(f"{str(x):>8} {'-':>8}  no partner")
            continue
        fam = klein_four_family(x, xbar)
        alg = "-"
        if args.algebroid:
            cp = build_crossed_product(klein_twist(QQ, x, xbar))
            rep = verify_algebroid(build_algebroid(cp))
            alg = "ok" if rep.ok else f"{sum(not c.passed for c in rep.checks)} checks fail"
        print(f"{str(x):>8} {str(xbar):>8}  {fam.invertible_pair!s:5} "
              f"{bool(fam.cocycle and fam.cocycle_bar)!s:9} {alg}")


if __name__ == "__main__":
    main()
