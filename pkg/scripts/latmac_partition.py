"""Compare bounded brute-force GL(2,Z) similarity classes with ideal classes.

For each polynomial x^2 + c1*x + c0 of the given discriminants, every matrix
with entries in [-E, E] and that characteristic polynomial is grouped by
conjugators with entries in [-C, C].  The cell count is printed next to the
number of ideal classes of Z[lambda] and the count including overorders.

    python3 scripts/latmac_partition.py --discs 5,8,12,13,17,20,21,40 -E 6 -C 10
"""

from __future__ import annotations

import argparse

from sha_predict.latmac import (MonicIntPolynomial, ideal_class_matrices, matrices_with_charpoly,
                                similarity_partition)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--discs", default="5,8,12,13,17,20,21,40,-3,-4,-20,-23")
    ap.add_argument("-E", type=int, default=6, help="entry bound for the matrices")
    ap.add_argument("-C", type=int, default=10, help="entry bound for conjugators")
    args = ap.parse_args(argv)

    print(f"{'poly':>12} {'disc':>6} {'matrices':>9} {'cells':>6} {'ideal':>6} {'all':>5}")
    for disc in (int(d) for d in args.discs.split(",")):
        poly = MonicIntPolynomial.for_discriminant(disc)
        mats = matrices_with_charpoly(poly, args.E)
        cells = similarity_partition(mats, args.C)
        ideal = len(ideal_class_matrices(poly))
        every = len(ideal_class_matrices(poly, include_overorders=True))
        print(f"{str(poly):>12} {disc:>6} {len(mats):>9} {len(cells):>6} {ideal:>6} {every:>5}")


if __name__ == "__main__":
    main()
