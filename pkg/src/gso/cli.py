"""Command line front end.

Exit codes: 0 verified, 1 negative verdict, 2 usage or precondition error,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from gso import construct, gf, orth, quantum
from gso.codes import CertifiedCode, GrsSpec, MdsCertificate

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUG = 0, 1, 2, 3


class DocumentError(ValueError):
    pass


def spec_to_doc(code: CertifiedCode, seed: int = 0) -> dict:
    spec, ctx = code.spec, code.ctx
    return {
        "p": ctx.p,
        "m": ctx.m,
        "modulus": list(ctx.modulus),
        "e": code.e,
        "k": spec.k,
        "extended": spec.extended,
        "locators": list(spec.a),
        "multipliers": list(spec.v),
        "meta": {
            "method": code.meta.get("method"),
            "seed": seed,
            "lambdaDegree": code.meta.get("lambda_degree"),
        },
    }


def doc_to_spec(doc: dict) -> tuple[GrsSpec, int]:
    try:
        ctx = gf.field_create(int(doc["p"]), int(doc["m"]), tuple(doc["modulus"]))
        spec = GrsSpec(ctx, tuple(doc["locators"]), tuple(doc["multipliers"]),
                       int(doc["k"]), bool(doc["extended"]))
        return spec, int(doc["e"])
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed document: {exc}") from exc


def load_doc(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(str(exc)) from exc


def _dump(doc, out=None):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(exc: Exception) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_USAGE


def cmd_field(args) -> int:
    ctx = gf.field_create(args.p, args.m)
    doc = {"p": ctx.p, "m": ctx.m, "q": ctx.q, "modulus": list(ctx.modulus),
           "w": int(ctx.power_of_w(1))}
    if args.e is not None:
        H = gf.h_subgroup(ctx, args.e)
        doc.update(e=args.e, gcd=H.index, case=H.case, h_order=H.order,
                   h_generator=int(H.generator))
    _dump(doc)
    return EXIT_OK


def _certified_from_spec(spec: GrsSpec, e: int, method="input") -> CertifiedCode:
    rep = orth.is_galois_so_direct(spec, e)
    return CertifiedCode(spec, e, rep.hull_dim,
                         MdsCertificate("structural", spec.length - spec.k + 1),
                         rep.is_zero, {"method": method})


def cmd_construct(args) -> int:
    if args.method == "transfer":
        if not args.spec:
            raise construct.ConstructionError("transfer needs --spec")
        spec, e0 = doc_to_spec(load_doc(args.spec))
        code = construct.transfer_eprime(_certified_from_spec(spec, e0), args.e, args.k)
    elif args.method == "subcode":
        if not args.spec:
            raise construct.ConstructionError("subcode needs --spec")
        spec, e0 = doc_to_spec(load_doc(args.spec))
        code = construct.subcode(_certified_from_spec(spec, e0), args.k)
    else:
        part = tuple(int(x) for x in args.partition.split(",")) if args.partition else None
        req = construct.ConstructionRequest(
            args.p, args.m, args.e, args.method, n=args.n, k=args.k, r=args.r,
            partition=part, alpha=args.a, beta=args.b, extended=args.extended,
            seed=args.seed)
        code = construct.build(req)
    print(f"[{code.n},{code.k}]_{code.ctx.q} e={code.e} hullDim={code.hull_dim} "
          f"mds={code.mds.kind} d={code.mds.d}", file=sys.stderr)
    _dump(spec_to_doc(code, args.seed), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec, e_doc = doc_to_spec(load_doc(args.spec))
    e = e_doc if args.e is None else args.e
    rep = orth.is_galois_so_direct(spec, e)
    lam = None
    pe = spec.ctx.p ** e
    if not spec.extended and 2 * e <= spec.ctx.m:
        lo, hi = orth.k_bracket(spec.n, pe, False)
        if lo <= spec.k <= hi:
            w = orth.multipliers_to_lambda(spec, e)
            lam = None if w is None else w.degree
    out = {"n": spec.length, "k": spec.k, "e": e, "isZero": bool(rep.is_zero),
           "hullDim": int(rep.hull_dim), "mds": "structural",
           "d": spec.length - spec.k + 1, "lambdaDegree": lam}
    _dump(out)
    return EXIT_OK if rep.is_zero else EXIT_NO


def cmd_enumerate(args) -> int:
    ctx = gf.field_create(args.p, args.m)
    es = args.e if args.e else list(range(args.m))
    verify = False if args.no_verify else None
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["p", "m", "e", "n", "k_max", "method", "verified"])
    rows = []
    for e in es:
        rows.extend(construct.enumerate_params(ctx, e, args.max_n, verify))
    rows.sort(key=lambda r: (r.e, r.n, r.method))
    for r in rows:
        w.writerow([r.p, r.m, r.e, r.n, r.k_max, r.method, str(r.verified).lower()])
    return EXIT_OK


def cmd_quantum(args) -> int:
    spec, e = doc_to_spec(load_doc(args.spec))
    base = _certified_from_spec(spec, e)
    code = quantum.propagate(base, quantum.HullTarget(args.rule, args.i, args.l), args.seed)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["rule", "i", "n", "k", "hull", "form", "params", "singleton", "mds_eaqecc"])
    forms = quantum.eaqecc_params(code.n, code.k, code.hull_dim, code.ctx.q)
    for form, qp in enumerate(forms, 1):
        rep = quantum.ea_singleton_check(qp)
        w.writerow([args.rule, args.i, code.n, code.k, code.hull_dim, form,
                    f"[[{qp.n},{qp.k},{qp.d};{qp.c}]]",
                    "pass" if rep.passed else "fail:" + "/".join(map(str, rep.failed)),
                    str(rep.mds).lower()])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gso", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("field", help="field modulus, primitive element and H")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--m", type=int, required=True)
    f.add_argument("--e", type=int)
    f.set_defaults(func=cmd_field)

    c = sub.add_parser("construct", help="build a verified self-orthogonal code")
    c.add_argument("--p", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--method", required=True, choices=construct.METHODS)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--partition", help="comma separated block sizes")
    c.add_argument("--a", type=int, default=1, help="affine scale alpha (enc)")
    c.add_argument("--b", type=int, default=0, help="affine shift beta (enc)")
    c.add_argument("--extended", action="store_true")
    c.add_argument("--spec", help="base document for transfer/subcode")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="Gram check of a code document")
    v.add_argument("--spec", required=True)
    v.add_argument("--e", type=int)
    v.set_defaults(func=cmd_verify)

    en = sub.add_parser("enumerate", help="parameter table as CSV")
    en.add_argument("--p", type=int, required=True)
    en.add_argument("--m", type=int, required=True)
    en.add_argument("--e", type=int, nargs="*")
    en.add_argument("--max-n", type=int)
    en.add_argument("--no-verify", action="store_true")
    en.set_defaults(func=cmd_enumerate)

    qu = sub.add_parser("quantum", help="propagate a hull and derive EAQECCs")
    qu.add_argument("--spec", required=True)
    qu.add_argument("--rule", type=int, required=True)
    qu.add_argument("--i", type=int, default=0)
    qu.add_argument("--l", type=int, required=True)
    qu.add_argument("--seed", type=int, default=0)
    qu.set_defaults(func=cmd_quantum)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "construct" and args.method not in ("transfer", "subcode") \
            and (args.p is None or args.m is None):
        return _fail(construct.ConstructionError("--p and --m are required"))
    try:
        return args.func(args)
    except construct.VerificationFailed as exc:
        print(f"error: VerificationFailed: {exc}", file=sys.stderr)
        return EXIT_BUG
    except (ValueError, OSError) as exc:  # every module error is a ValueError
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
