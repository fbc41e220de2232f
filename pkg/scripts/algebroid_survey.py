"""Build the algebroid of every catalog crossed product and list the checks
that fail, plus whether a corrupted antipode is noticed."""

import argparse
import time

from parcoh.algebroid import build_algebroid, corrupt_antipode, verify_algebroid
from parcoh.catalog import catalog_crossed_products
from parcoh.linalg import field_from_name


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", default="Q")
    args = ap.parse_args()
    start = time.perf_counter()
    for product in catalog_crossed_products(field_from_name(args.field)):
        data = build_algebroid(product.product)
        rep = verify_algebroid(data)
        caught = not verify_algebroid(corrupt_antipode(data)).ok
        failed = [c.name for c in rep.checks if not c.passed]
        print(f"{'PASS' if rep.ok else 'FAIL'} {product.label}  corruption caught={caught}")
        for name in failed:
            print(f"     {name}")
    print(f"{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
