"""Print the ?-images of [0,1] & (Z + Z*theta) for growing N.

    python3 scripts/minkowski_scale.py --theta "sqrt2-1" --max-N 4
"""

from __future__ import annotations

import argparse

from sha_predict.cli import parse_literal
from sha_predict.minkowski import is_dyadic, scale_embedding


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", default="sqrt2-1")
    ap.add_argument("--max-N", type=int, default=4)
    args = ap.parse_args(argv)
    theta = parse_literal(args.theta)
    for N in range(1, args.max_N + 1):
        pts = scale_embedding(theta, N)
        images = [y for _, _, y in pts]
        increasing = all(u < v for u, v in zip(images, images[1:]))
        dyadic_inside = sum(is_dyadic(y) for y in images[1:-1])
        print(f"N={N}: {len(pts)} points, increasing={increasing}, "
              f"dyadic interior images={dyadic_inside}")
        if N == args.max_N:
            for (m, n), v, y in pts:
                print(f"  {m:>3} {n:>3}  {str(v):<22} {y}")


if __name__ == "__main__":
    main()
