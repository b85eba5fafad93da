#!/usr/bin/env python3
"""Drive every propagation rule from a few seed codes and print the hull
reached plus both EAQECC tuples for each target."""

import argparse

from gso import construct as C
from gso import quantum as Q
from gso.gf import field_create


def seeds():
    yield C.construct_lambda1(field_create(2, 3), 1, 7, 2)
    yield C.construct_hermitian_lift(field_create(3, 2), 1, 8, 2)
    yield C.construct_lambda1(field_create(2, 4), 1, 8, 3)
    yield C.construct_lambda1(field_create(2, 7), 1, 40, 6)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("q,n0,k0,rule,i,l,n,k,hull,eaqecc1,eaqecc2")
    for base in seeds():
        q, k = base.ctx.q, base.k
        for rule in range(1, 8):
            irange = [0] if rule == 1 else range(1, k + 1)
            for i in irange:
                for l in range(k - i + 1):
                    t = Q.HullTarget(rule, i, l)
                    try:
                        Q.check_target(base, t)
                    except Q.TargetOutOfRange:
                        continue
                    out = Q.propagate(base, t, args.seed)
                    a, b = Q.eaqecc_params(out.n, out.k, out.hull_dim, q)
                    print(f"{q},{base.n},{k},{rule},{i},{l},{out.n},"
                          f"{out.k},{out.hull_dim},\"{a}\",\"{b}\"")


if __name__ == "__main__":
    main()
