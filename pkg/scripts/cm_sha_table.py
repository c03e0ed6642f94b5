"""Tabulate the CM pipeline for square-free D in a range.

For each D: Cl(R) for R = Z + f*O_K, K = Q(sqrt(-D)); the least conductor f'
with h(Z + f'*O_k) = |Cl(R)| in k = Q(sqrt(D)) (or "-" when none exists
within the bound); and the predicted Sha.

    python3 scripts/cm_sha_table.py --max-D 60 --bound 500
"""

from __future__ import annotations

import argparse
import csv
import sys

from sha_predict.arith import is_squarefree
from sha_predict.sha import sha_cm_curve


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-D", type=int, default=60)
    ap.add_argument("--f", type=int, default=1)
    ap.add_argument("--bound", type=int, default=500, help="largest f' searched")
    ap.add_argument("--csv", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for D in range(2, args.max_D + 1):
        if not is_squarefree(D):
            continue
        rep = sha_cm_curve(D, args.f, conductor_bound=args.bound, require_lambda=False)
        rows.append((D, rep.R.disc, str(rep.cl_R), rep.cl_R.order,
                     rep.f_prime if rep.f_prime is not None else "-",
                     str(rep.sha.result), rep.sha.order, rep.sha.parity))
    header = ("D", "disc R", "Cl(R)", "h", "f'", "Sha", "|Sha|", "k parity")
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)
        return
    print(" ".join(f"{h:>10}" for h in header))
    for r in rows:
        print(" ".join(f"{str(x):>10}" for x in r))
    missing = sum(r[4] == "-" for r in rows)
    print(f"\n{len(rows)} values of D, {missing} without a matching f' <= {args.bound}")


if __name__ == "__main__":
    main()
