#!/usr/bin/env python3
"""Print the length-(q+1) parameter rows for the example fields and write
the full enumerate tables as CSV."""

import argparse
import csv
import time
from pathlib import Path

from gso.construct import enumerate_params
from gso.gf import field_create

FIELDS = {(2, 7): (1, 2, 3), (3, 5): (1, 2), (3, 8): (1, 2, 3, 5)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="tables", help="directory for the CSV tables")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for (p, m), es in FIELDS.items():
        ctx = field_create(p, m)
        t = time.time()
        rows = [r for e in es for r in enumerate_params(ctx, e)]
        with open(out / f"gso_{p}_{m}.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["p", "m", "e", "n", "k_max", "method", "verified"])
            for r in rows:
                w.writerow([r.p, r.m, r.e, r.n, r.k_max, r.method, str(r.verified).lower()])
        for r in rows:
            if r.n == ctx.q + 1:
                print(f"q={ctx.q} e={r.e} n={r.n} kMax={r.k_max} {r.method} verified={r.verified}")
        print(f"  ({len(rows)} rows, {time.time() - t:.0f}s)")


if __name__ == "__main__":
    main()
