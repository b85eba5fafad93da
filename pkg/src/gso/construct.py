"""Constructions of e-Galois self-orthogonal (extended) GRS codes.

Every builder returns a CertifiedCode whose Gram matrix has been checked to
be zero under both e and m - e; nothing is taken on faith from a formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from gso import linalg, poly
from gso.codes import (BadDimension, CertifiedCode, GrsSpec, MdsCertificate,
                       u_vector)
from gso.gf import (FieldCtx, NotInH, affine_frobenius_set, field_create,
                    galois_root, gcd_case, h_subgroup, subfield_elements,
                    subfield_embedding)
from gso.orth import (LambdaWitness, MultiplierFailure, PreconditionViolated,
                      affine_frobenius_params, affine_lead, degree_bound,
                      is_galois_so_direct, k_bracket, lambda_to_multipliers,
                      multipliers_to_lambda, so_system)


class ConstructionError(ValueError):
    pass


class NotEnoughLocators(ConstructionError):
    pass


class CaseHypothesisFailed(ConstructionError):
    pass


class WitnessNotInH(ConstructionError):
    pass


class BadPartition(ConstructionError):
    pass


class BlockWitnessMissing(ConstructionError):
    pass


class NoBaseCode(ConstructionError):
    pass


class NoAllNonzeroSolution(ConstructionError):
    pass


class KOutOfRange(ConstructionError):
    pass


class GcdMismatch(ConstructionError):
    pass


class NoLambdaWitness(ConstructionError):
    pass


class VerificationFailed(RuntimeError):
    """A built code failed its Gram check (a bug, never a user error)."""


METHODS = ("affine", "coset_blocks", "coset_lambda1", "hermitian",
           "hermitian_isolated", "theta", "qplus1", "qplus1_isolated",
           "transfer", "subcode")

VERIFY_LIMIT = 1 << 13


@dataclass(frozen=True)
class ConstructionRequest:
    p: int
    m: int
    e: int
    method: str
    n: int | None = None
    k: int | None = None
    r: int | None = None
    partition: tuple[int, ...] | None = None
    alpha: int = 1
    beta: int = 0
    extended: bool = False
    seed: int = 0


@dataclass(frozen=True)
class ParamRow:
    p: int
    m: int
    e: int
    n: int
    k_max: int
    method: str
    verified: bool


def reduced_e(m: int, e: int) -> int:
    """The smaller of e and m - e; both give the same self-orthogonal codes."""
    e %= m
    return min(e, m - e) if e else 0


def certify(spec: GrsSpec, e: int, **meta) -> CertifiedCode:
    ctx = spec.ctx
    for ee in sorted({e % ctx.m, (ctx.m - e) % ctx.m}):
        rep = is_galois_so_direct(spec, ee)
        if not rep.is_zero:
            raise VerificationFailed(
                f"[{spec.length},{spec.k}] Gram nonzero under e={ee} (hull {rep.hull_dim})")
    mds = MdsCertificate("structural", spec.length - spec.k + 1)
    return CertifiedCode(spec, e, spec.k, mds, True, dict(meta))


def _values_to_multipliers(ctx: FieldCtx, w, e: int) -> np.ndarray:
    w = np.asarray(w, dtype=np.int64)
    H = h_subgroup(ctx, e)
    bad = np.nonzero((w == 0) | ~H.contains(w))[0]
    if len(bad):
        i = int(bad[0])
        raise MultiplierFailure(i, "Zero" if w[i] == 0 else "NotInH")
    return np.asarray(galois_root(ctx, w, e), dtype=np.int64).reshape(-1)


# -- no-root polynomials ---------------------------------------------------

@lru_cache(maxsize=None)
def _least_rootfree(p: int, m: int, modulus: tuple, degree: int) -> tuple[int, ...]:
    ctx = field_create(p, m, modulus)
    xs = ctx.elements
    q = ctx.q
    top = ctx.pow(xs, degree)
    # monic x^d + c_{d-1} x^{d-1} + ... + c_0, highest coefficient compared first
    for mid in itertools.product(range(q), repeat=degree - 1):
        val = top.copy()
        for j, c in enumerate(reversed(mid)):  # c for x^(j+1)
            if c:
                val = ctx.add(val, ctx.mul(c, ctx.pow(xs, j + 1)))
        hit = np.zeros(q, dtype=bool)
        hit[ctx.neg(val)] = True
        free = np.nonzero(~hit)[0]
        if len(free):
            c0 = int(free[0])
            return (c0,) + tuple(reversed(mid)) + (1,)
    raise AssertionError("no root-free polynomial")  # pragma: no cover


def irreducible_quadratic(ctx: FieldCtx) -> tuple[int, ...]:
    return _least_rootfree(ctx.p, ctx.m, ctx.modulus, 2)


def irreducible_cubic(ctx: FieldCtx) -> tuple[int, ...]:
    return _least_rootfree(ctx.p, ctx.m, ctx.modulus, 3)


def _noroot_split(l: int) -> tuple[int, int]:
    if l < 2:
        raise ValueError("degree must be >= 2")
    j = l % 2
    return (l - 3 * j) // 2, j


def noroot_poly(ctx: FieldCtx, l: int) -> tuple[int, ...]:
    """Monic degree-l polynomial g2^i g3^j (2i + 3j = l, least j) with no
    roots in F_q, g2/g3 the least irreducible quadratic/cubic."""
    i, j = _noroot_split(l)
    f = poly.power(ctx, irreducible_quadratic(ctx), i)
    if j:
        f = poly.mul(ctx, f, irreducible_cubic(ctx))
    return f


def noroot_values(ctx: FieldCtx, l: int, x, power: int = 1) -> np.ndarray:
    """noroot_poly(l)(x)^power evaluated pointwise (no coefficient expansion)."""
    i, j = _noroot_split(l)
    val = ctx.pow(poly.evaluate(ctx, irreducible_quadratic(ctx), x), i)
    if j:
        val = ctx.mul(val, poly.evaluate(ctx, irreducible_cubic(ctx), x))
    return ctx.pow(val, power)


# -- witness search --------------------------------------------------------

def _lambda_candidates(ctx: FieldCtx, D: int, extended: bool, lead: int,
                       fixed: np.ndarray, budget: int):
    """Deterministic candidate order for lambda (coefficient tuples)."""
    seen = set()

    def emit(f):
        f = poly.trim(f)
        if f and f not in seen:
            seen.add(f)
            return f
        return None

    out = []
    if extended:
        base = [0] * D + [lead]
        out.append(tuple(base))
        for c in fixed.tolist() + ctx.elements.tolist():
            out.append(tuple([c] + base[1:]) if D else tuple(base))
        if D >= 2:
            # monic root-free polynomials over the fixed field, scaled
            sub_free = _fixed_field_noroot(ctx, fixed, D)
            if sub_free is not None:
                out.append(tuple(ctx.mul(lead, np.array(sub_free)).tolist()))
        pools = [fixed.tolist(), ctx.elements.tolist()]
        for pool in pools:
            for lower in itertools.product(pool, repeat=D):
                out.append(tuple(lower) + (lead,))
                if len(out) > budget:
                    break
    else:
        out.append((1,))
        out.extend((c,) for c in range(2, ctx.q))
        out.extend(tuple([0] * j + [1]) for j in range(1, D + 1))
        for pool in (fixed.tolist(), ctx.elements.tolist()):
            for coeffs in itertools.product(pool, repeat=D + 1):
                out.append(tuple(reversed(coeffs)))
                if len(out) > budget:
                    break
    for f in out[:budget]:
        g = emit(f)
        if g is not None:
            yield g


def _fixed_field_noroot(ctx: FieldCtx, fixed: np.ndarray, D: int):
    """Root-free monic polynomial of degree D with coefficients in the
    subfield ``fixed`` (values on the subfield stay inside it)."""
    s = round(math.log(len(fixed) + 1, ctx.p))
    if s == ctx.m:
        return noroot_poly(ctx, D)
    sub = field_create(ctx.p, s)
    emb = subfield_embedding(sub, ctx)
    return tuple(int(emb[c]) for c in noroot_poly(sub, D))


def base_witness_search(ctx: FieldCtx, e_base: int, locators, k: int,
                        extended: bool = False, budget: int = 1 << 13):
    """Find lambda with lambda(a)u (or -lambda(a)u) in H for the given
    locators; returns (GrsSpec, LambdaWitness) or None."""
    a = np.asarray(locators, dtype=np.int64)
    n = len(a)
    pe = ctx.p ** e_base
    ab = affine_frobenius_params(ctx, a, e_base)
    if ab is not None:
        D = n - 2 * k + (1 if extended else 0)
        lead = int(ctx.pow(ab[0], 1 - k)) if extended else 1
    else:
        D = degree_bound(n, k, pe, extended)
        lead = 1
    if D < 0 or (not extended and k > n):
        return None
    u = u_vector(ctx, a)
    H = h_subgroup(ctx, e_base)
    sgn = int(ctx.neg(1)) if extended else 1
    fixed = subfield_elements(ctx, math.gcd(e_base, ctx.m) if e_base else ctx.m)
    fixed = fixed[fixed != 0]
    for lam in _lambda_candidates(ctx, D, extended, lead, fixed, budget):
        w = ctx.mul(ctx.mul(poly.evaluate(ctx, lam, a), u), sgn)
        if np.all(H.contains(w)):
            v = galois_root(ctx, w, e_base)
            spec = GrsSpec(ctx, tuple(a.tolist()),
                           tuple(np.atleast_1d(v).tolist()), k, extended)
            return spec, LambdaWitness(lam, "egrs" if extended else "grs", D)
    return None


def _locator_orders(ctx: FieldCtx, e_base: int, n: int):
    """Candidate locator sets: sigma^e_base-fixed elements first, then the
    shifted fixed cosets x^(p^e) = x + b, then plain enc order."""
    seen = []
    pools = []
    if e_base:
        fixed = subfield_elements(ctx, math.gcd(e_base, ctx.m))
        rest = np.setdiff1d(ctx.elements, fixed)
        pools.append(np.concatenate([fixed, rest]))
        for b in range(1, ctx.q):
            S = affine_frobenius_set(ctx, 1, b, e_base)
            if len(S) >= n:
                pools.append(S)
                break
    pools.append(ctx.elements)
    for pool in pools:
        a = tuple(pool[:n].tolist())
        if len(a) == n and a not in seen:
            seen.append(a)
            yield np.array(a, dtype=np.int64)


# -- affine-Frobenius locators ---------------------------------------------

def construct_affine(ctx: FieldCtx, e: int, n: int, k: int, alpha: int = 1,
                     beta: int = 0, extended: bool = False,
                     subset_budget: int = 512) -> CertifiedCode:
    """Code of length n on locators with sigma^e(a) = alpha a + beta.

    ``extended`` builds the length-n EGRS code on n - 1 such locators.
    """
    e_r = reduced_e(ctx.m, e)
    case = gcd_case(ctx.p, ctx.m, e_r)
    if case == 3:
        raise CaseHypothesisFailed("m/s even: use the Hermitian lift")
    locs = affine_frobenius_set(ctx, alpha, beta, e_r)
    nloc = n - int(extended)
    if nloc < 1 or nloc > len(locs):
        raise NotEnoughLocators(f"{len(locs)} affine locators, need {nloc}")
    if k < 1 or 2 * k > n:
        raise KOutOfRange(f"k must be in [1, {n // 2}]")
    if extended and nloc >= ctx.q:
        raise NotEnoughLocators("extended case needs n - 1 < q")

    def off_zero(a):
        if not extended:
            return a
        shift = next(c for c in range(ctx.q) if not np.any(ctx.add(a, c) == 0))
        return ctx.add(a, shift)

    if case == 1:
        a = off_zero(locs[:nloc])
        if extended:
            D = nloc - 2 * k + 1
            lead = affine_lead(ctx, a, e_r, k)
            lam = LambdaWitness(tuple([0] * D + [lead]), "egrs", D)
        else:
            lam = LambdaWitness((1,), "grs", nloc - 2 * k)
        v = lambda_to_multipliers(ctx, a, lam, e_r, k=k, affine=True)
        spec = GrsSpec(ctx, a, v, k, extended)
        return certify(spec, e, method="affine", lambda_degree=lam.degree)
    # case 2: a Euclidean witness on the same locators, QR = H; try locator
    # subsets of the affine set in lexicographic order
    found = None
    for sub in itertools.islice(itertools.combinations(locs.tolist(), nloc), subset_budget):
        a = off_zero(np.array(sub, dtype=np.int64))
        found = base_witness_search(ctx, 0, a, k, extended, budget=256)
        if found is not None:
            break
    if found is None:
        raise WitnessNotInH("no Euclidean self-orthogonal witness on these locators")
    lam = found[1]
    if extended:
        lead = affine_lead(ctx, a, e_r, k)
        lam = LambdaWitness(tuple(ctx.mul(lead, np.array(lam.lam)).tolist()), "egrs",
                            lam.degree_bound)
    try:
        v = lambda_to_multipliers(ctx, a, lam, e_r, k=k, affine=True)
    except MultiplierFailure as exc:
        raise WitnessNotInH(str(exc)) from exc
    spec = GrsSpec(ctx, a, v, k, extended)
    return certify(spec, e, method="affine", lambda_degree=lam.degree)


# -- disjoint cosets of the subfield ---------------------------------------

def balanced_partition(n: int, block: int) -> tuple[int, ...]:
    t = -(-n // block)
    base, extra = divmod(n, t)
    return tuple(base + 1 if i < extra else base for i in range(t))


def _coset_frame(ctx: FieldCtx, s: int):
    sub = field_create(ctx.p, s)
    emb = subfield_embedding(sub, ctx)
    in_sub = np.zeros(ctx.q, dtype=bool)
    in_sub[emb] = True
    zeta = int(np.nonzero(~in_sub)[0][0])
    return sub, emb, zeta


def construct_coset_sum(ctx: FieldCtx, e: int, partition, k: int) -> CertifiedCode:
    """Blocks S_i = F_{p^s} + b_i zeta, each carrying its own witness."""
    e_r = reduced_e(ctx.m, e)
    s = math.gcd(e_r, ctx.m)
    case = gcd_case(ctx.p, ctx.m, e_r)
    if case == 3:
        raise CaseHypothesisFailed("m/s must be odd")
    ps = ctx.p ** s
    part = tuple(int(x) for x in partition)
    n = sum(part)
    if len(part) < 2 or len(part) > ps or any(x < 1 or x > ps for x in part):
        raise BadPartition(f"need 2 <= t <= {ps} blocks of size <= {ps}")
    if not ps + 2 <= n <= ps * ps:
        raise BadPartition(f"n={n} outside [{ps + 2}, {ps * ps}]")
    if s == ctx.m:
        raise BadPartition("no element outside the subfield")
    sub, emb, zeta = _coset_frame(ctx, s)
    a_parts, x_parts = [], []
    for i, ni in enumerate(part):
        b_i = int(emb[sub.elements[i]])
        shift = int(ctx.mul(b_i, zeta))
        sub_locs = sub.elements[:ni]
        if case == 1:
            if 2 * k > ni:
                raise KOutOfRange(f"k={k} exceeds floor({ni}/2)")
            xs = u_vector(sub, sub_locs)
        else:
            found = base_witness_search(sub, 0, sub_locs, k)
            if found is None:
                raise BlockWitnessMissing(f"no Euclidean [{ni},{k}] witness over F_{ps}")
            xs = sub.pow(found[0].v_arr, 2)
        a_parts.append(ctx.add(emb[sub_locs], shift))
        x_parts.append(emb[xs])
    a = np.concatenate(a_parts)
    v = _values_to_multipliers(ctx, np.concatenate(x_parts), e_r)
    spec = GrsSpec(ctx, a, v, k)
    return certify(spec, e, method="coset_blocks", partition=list(part))


def construct_lambda1(ctx: FieldCtx, e: int, n: int, k: int) -> CertifiedCode:
    """lambda = 1 on the first n field elements (needs u in H)."""
    e_r = reduced_e(ctx.m, e)
    pe = ctx.p ** e_r
    if n > ctx.q:
        raise NotEnoughLocators("n > q")
    if k < 1 or k > (n + pe - 1) // (pe + 1):
        raise KOutOfRange(f"k={k} exceeds floor((n+p^e-1)/(p^e+1))")
    a = ctx.elements[:n]
    try:
        v = lambda_to_multipliers(ctx, a, LambdaWitness((1,), "grs", 0), e_r, k=k)
    except MultiplierFailure as exc:
        raise WitnessNotInH(str(exc)) from exc
    return certify(GrsSpec(ctx, a, v, k), e, method="coset_lambda1", lambda_degree=0)


# -- Hermitian lift --------------------------------------------------------

def hermitian_linear_search(ctx: FieldCtx, s: int, locators, k: int,
                            extended: bool = False, seed: int = 0, tries: int = 2000):
    """Hermitian base over F_{p^{2s}} by linear algebra over F_{p^s}.

    Here H = F_{p^s}^*, so x = v^(p^s+1) must solve A x = b with every x_i
    in the subfield and nonzero. Splitting A = A0 + A1 beta over the
    subfield turns this into a subfield system; an all-nonzero point of its
    solution set is then looked for among the basis vectors and seeded
    random subfield combinations.
    """
    if ctx.m != 2 * s:
        raise ValueError("needs the field F_{p^{2s}}")
    a = np.asarray(locators, dtype=np.int64)
    if k > len(a) + int(extended):
        return None
    spec = GrsSpec(ctx, a, np.ones(len(a), dtype=np.int64), k, extended)
    sysm = so_system(spec, s)
    sub = subfield_elements(ctx, s)
    inside = np.zeros(ctx.q, dtype=bool)
    inside[sub] = True
    beta = int(np.nonzero(~inside)[0][0])
    denom = ctx.inv(ctx.sub(beta, ctx.frob(beta, s)))

    def split(M):
        c1 = ctx.mul(ctx.sub(M, ctx.frob(M, s)), denom)
        return ctx.sub(M, ctx.mul(c1, beta)), c1

    A0, A1 = split(sysm.A)
    b0, b1 = split(sysm.rhs)
    M = np.concatenate([A0, A1])
    rhs = np.concatenate([b0, b1])
    x0 = linalg.solve_affine(ctx, M, rhs)
    if x0 is None:
        return None
    N = linalg.nullspace(ctx, M)
    rng = np.random.default_rng(seed)

    def greedy(x):
        # walk the basis, keeping the subfield multiple with fewest zeros
        for _ in range(4):
            for j in rng.permutation(len(N)):
                opts = ctx.add(x[None, :], ctx.mul(sub[:, None], N[j][None, :]))
                x = opts[int(np.argmin(np.count_nonzero(opts == 0, axis=1)))]
            if np.all(x != 0):
                break
        return x

    cands = [x0, greedy(x0)]
    work = max(1, len(N) * len(a))
    for _ in range(min(tries, (1 << 24) // work) if len(N) else 0):
        c = rng.choice(sub, size=len(N))
        cands.append(ctx.add(x0, ctx.sum(ctx.mul(c[:, None], N), axis=0)))
    for x in cands:
        if np.all(x != 0):
            assert np.all(inside[x])
            v = np.atleast_1d(galois_root(ctx, x, s))
            return spec.with_(v=tuple(v.tolist()))
    return None


def hermitian_base(ctx: FieldCtx, e: int, n: int, k: int):
    """Base Hermitian-SO spec over F_{p^{2s}} of length n (EGRS when n = p^{2s}+1
    or when no GRS base is found)."""
    e_r = reduced_e(ctx.m, e)
    s = math.gcd(e_r, ctx.m)
    sub = field_create(ctx.p, 2 * s)
    if n == sub.q + 1:
        return construct_q_plus_1(sub, s, k).spec
    for extended in (False, True):
        nloc = n - int(extended)
        if nloc < 1 or nloc > sub.q:
            continue
        for a in _locator_orders(sub, s, nloc):
            found = base_witness_search(sub, s, a, k, extended, budget=64)
            if found is not None:
                return found[0]
            found = hermitian_linear_search(sub, s, a, k, extended)
            if found is not None:
                return found
    return None


def hermitian_k_limit(n: int, ps: int) -> int:
    """Largest k a Hermitian-SO (E)GRS code of length n over F_{ps^2} can
    have: once k >= ps the lambda bracket caps it."""
    return max(ps - 1, (n + ps - 1) // (ps + 1))


def construct_hermitian_lift(ctx: FieldCtx, e: int, n: int, k: int,
                             base: GrsSpec | None = None) -> CertifiedCode:
    e_r = reduced_e(ctx.m, e)
    s = math.gcd(e_r, ctx.m)
    if gcd_case(ctx.p, ctx.m, e_r) != 3:
        raise CaseHypothesisFailed("m/s must be even")
    if base is None and k > hermitian_k_limit(n, ctx.p ** s):
        raise KOutOfRange(f"k={k} exceeds {hermitian_k_limit(n, ctx.p ** s)}")
    if base is None:
        try:
            base = hermitian_base(ctx, e, n, k)
        except ConstructionError:
            base = None
    if base is None:
        raise NoBaseCode(f"no Hermitian self-orthogonal [{n},{k}] base over F_{ctx.p ** (2 * s)}")
    sub = base.ctx
    if sub.p != ctx.p or sub.m != 2 * s:
        raise ConstructionError("base must live in F_{p^{2s}}")
    emb = subfield_embedding(sub, ctx)
    spec = GrsSpec(ctx, emb[base.a_arr], emb[base.v_arr], base.k, base.extended)
    return certify(spec, e, method="hermitian", base_digest=base.digest())


# -- theta blocks ----------------------------------------------------------

def theta_exponent_set(pe: int, k: int) -> list[int]:
    """u >= 1 with p^e i + j = u (p^e - 1) for some 0 <= i, j <= k-1."""
    us = set()
    for i in range(k):
        for j in range(k):
            if (i, j) != (0, 0) and (pe * i + j) % (pe - 1) == 0:
                us.add((pe * i + j) // (pe - 1))
    return sorted(us)


def all_nonzero_null_vector(ctx: FieldCtx, N: np.ndarray, seed: int = 0,
                            tries: int = 2000):
    """A combination of the rows of N with no zero coordinate, or None."""
    if N.shape[0] == 0:
        return None
    for row in N:
        if np.all(row != 0):
            return row
    scal = ctx.elements[1:]
    for i in range(N.shape[0]):
        for j in range(i + 1, N.shape[0]):
            combos = ctx.add(N[i][None, :], ctx.mul(scal[:, None], N[j][None, :]))
            ok = np.nonzero(np.all(combos != 0, axis=1))[0]
            if len(ok):
                return combos[ok[0]]
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        c = rng.integers(0, ctx.q, N.shape[0])
        vec = ctx.sum(ctx.mul(c[:, None], N), axis=0)
        if np.all(vec != 0):
            return vec
    return None


def theta_system(ctx: FieldCtx, e: int, r: int, k: int) -> np.ndarray:
    pe = ctx.p ** e
    alpha = ctx.power_of_w(pe - 1)
    rows = [np.ones(r + 1, dtype=np.int64)]
    for u in theta_exponent_set(pe, k):
        row = np.zeros(r + 1, dtype=np.int64)
        row[1:] = ctx.pow_many(alpha, [u * l for l in range(1, r + 1)])
        rows.append(row)
    return np.array(rows)


def construct_theta_blocks(ctx: FieldCtx, e: int, r: int, k: int,
                           seed: int = 0) -> CertifiedCode:
    e_r = reduced_e(ctx.m, e)
    if e_r == 0 or ctx.m % e_r or (ctx.m // e_r) % 2 == 0 or ctx.p != 2:
        raise CaseHypothesisFailed("needs p even, e | m and m/e odd")
    pe = ctx.p ** e_r
    if not 1 <= r <= pe + 1:
        raise PreconditionViolated(f"r must be in [1, {pe + 1}]")
    if not 1 <= k <= (pe + r - 1) // 2:
        raise KOutOfRange(f"k must be in [1, {(pe + r - 1) // 2}]")
    period = ctx.order // (pe - 1)
    if r > period:
        raise NotEnoughLocators("blocks would overlap")
    theta = ctx.power_of_w(period)
    a = [0]
    for l in range(1, r + 1):
        wl = ctx.power_of_w(l)
        a.extend(int(ctx.mul(wl, ctx.pow(theta, nu))) for nu in range(pe - 1))
    B = theta_system(ctx, e_r, r, k)
    x = all_nonzero_null_vector(ctx, linalg.nullspace(ctx, B), seed)
    if x is None:
        raise NoAllNonzeroSolution(
            f"B ({B.shape[0]}x{B.shape[1]}) has no null vector without zeros")
    assert h_subgroup(ctx, e_r).order == ctx.order
    pe_field = ctx.from_int(pe - 1)
    xs = [int(ctx.mul(x[0], pe_field))]
    for l in range(1, r + 1):
        xs.extend([int(x[l])] * (pe - 1))
    v = _values_to_multipliers(ctx, xs, e_r)
    spec = GrsSpec(ctx, a, v, k)
    return certify(spec, e, method="theta", r=r)


# -- length q + 1 ----------------------------------------------------------

def q_plus_1_kmax(p: int, m: int, e: int) -> int:
    e_r = reduced_e(m, e)
    q, pe = p ** m, p ** e_r
    case = gcd_case(p, m, e_r)
    if case == 1:
        return (q + pe - 2) // (pe + 1)
    if case == 2:
        return (q + pe - 4) // (pe + 1)
    ps = p ** math.gcd(e_r, m)
    return (q + pe - 2 * (ps + 1)) // (pe + 1)


def q_plus_1_isolated(p: int, m: int, e: int) -> int | None:
    e_r = reduced_e(m, e)
    if e_r == 0 or gcd_case(p, m, e_r) != 3 or math.gcd(e_r, m) != e_r:
        return None
    return (p ** m - 1) // (p ** e_r + 1) + 1


def construct_q_plus_1(ctx: FieldCtx, e: int, k: int) -> CertifiedCode:
    """EGRS code on all of F_q (u = -1)."""
    e_r = reduced_e(ctx.m, e)
    q, pe = ctx.q, ctx.p ** e_r
    case = gcd_case(ctx.p, ctx.m, e_r)
    kmax = q_plus_1_kmax(ctx.p, ctx.m, e)
    iso = q_plus_1_isolated(ctx.p, ctx.m, e)
    if not (1 <= k <= kmax or k == iso):
        raise KOutOfRange(f"k={k} not in [1, {kmax}]" + (f" or {iso}" if iso else ""))
    l = q - (k - 1) * (pe + 1) - 1
    a = ctx.elements
    if case == 1:
        w = noroot_values(ctx, l, a)
    elif case == 2:
        assert l % 2 == 0
        w = noroot_values(ctx, l // 2, a, power=2)
    else:
        ps1 = ctx.p ** math.gcd(e_r, ctx.m) + 1
        assert l % ps1 == 0
        w = (np.ones(q, dtype=np.int64) if l == 0
             else noroot_values(ctx, l // ps1, a, power=ps1))
    v = _values_to_multipliers(ctx, w, e_r)
    spec = GrsSpec(ctx, a, v, k, True)
    return certify(spec, e, method="qplus1", lambda_degree=l)


# -- transfer and subcodes -------------------------------------------------

def transfer_eprime(base: CertifiedCode, e: int, k: int | None = None) -> CertifiedCode:
    """Reuse the lambda witness of an e'-SO GRS code for a new exponent e."""
    ctx, spec = base.ctx, base.spec
    if spec.extended:
        raise CaseHypothesisFailed("transfer needs a GRS base")
    e0 = reduced_e(ctx.m, base.e)
    e1 = reduced_e(ctx.m, e)
    same_gcd = math.gcd(e0, ctx.m) == math.gcd(e1, ctx.m)
    if not same_gcd and h_subgroup(ctx, e0).order != h_subgroup(ctx, e1).order:
        raise GcdMismatch("exponents give different subgroups H")
    try:
        lam = multipliers_to_lambda(spec, e0)
    except PreconditionViolated as exc:
        raise NoLambdaWitness(str(exc)) from exc
    if lam is None:
        raise NoLambdaWitness("base multipliers admit no lambda")
    pe = ctx.p ** e1
    bound = (spec.n + pe - 1 - lam.degree) // (pe + 1)
    k = bound if k is None else k
    if not 1 <= k <= bound:
        raise KOutOfRange(f"k must be in [1, {bound}]")
    D = degree_bound(spec.n, k, pe, False)
    v = lambda_to_multipliers(ctx, spec.a_arr, LambdaWitness(lam.lam, "grs", D), e1, k=k)
    return certify(GrsSpec(ctx, spec.a, v, k), e, method="transfer",
                   lambda_degree=lam.degree, base_e=base.e)


def _subcode_shift(ctx: FieldCtx, a: np.ndarray, d: int):
    """Monic h of degree d with no root among the locators a."""
    if not np.any(a == 0):
        return poly.monomial(d)
    if d == 1:
        outside = np.setdiff1d(ctx.elements, a)
        if not len(outside):
            return None
        return (int(ctx.neg(outside[0])), 1)
    return noroot_poly(ctx, d)


def subcode(code: CertifiedCode, k: int) -> CertifiedCode:
    spec = code.spec
    if not 1 <= k <= spec.k:
        raise BadDimension(f"k must be in [1, {spec.k}]")
    if k == spec.k:
        return code
    if not spec.extended:
        return certify(spec.with_(k=k), code.e, **{**code.meta, "subcode_of": spec.k})
    ctx = spec.ctx
    h = _subcode_shift(ctx, spec.a_arr, spec.k - k)
    if h is None:
        raise BadDimension("every linear shift vanishes on a locator")
    v = ctx.mul(spec.v_arr, poly.evaluate(ctx, h, spec.a_arr))
    return certify(spec.with_(k=k, v=tuple(v.tolist())), code.e,
                   **{**code.meta, "subcode_of": spec.k})


# -- dispatcher and parameter tables ---------------------------------------

def build(req: ConstructionRequest, ctx: FieldCtx | None = None) -> CertifiedCode:
    ctx = ctx or field_create(req.p, req.m)
    m = req.method
    if m == "affine":
        return construct_affine(ctx, req.e, req.n, req.k, req.alpha, req.beta, req.extended)
    if m == "coset_blocks":
        s = math.gcd(reduced_e(ctx.m, req.e), ctx.m)
        part = req.partition or balanced_partition(req.n, ctx.p ** s)
        return construct_coset_sum(ctx, req.e, part, req.k)
    if m == "coset_lambda1":
        return construct_lambda1(ctx, req.e, req.n, req.k)
    if m in ("hermitian", "hermitian_isolated"):
        return construct_hermitian_lift(ctx, req.e, req.n, req.k)
    if m == "theta":
        return construct_theta_blocks(ctx, req.e, req.r, req.k, req.seed)
    if m in ("qplus1", "qplus1_isolated"):
        return construct_q_plus_1(ctx, req.e, req.k)
    raise ConstructionError(f"unknown method {m!r}")


def _try(fn, *args) -> bool:
    try:
        fn(*args)
        return True
    except (ConstructionError, PreconditionViolated, MultiplierFailure, NotInH):
        return False


def _search_kmax(build_k, hi: int) -> int:
    for k in range(hi, 0, -1):
        if _try(build_k, k):
            return k
    return 0


def enumerate_params(ctx: FieldCtx, e: int, max_n: int | None = None,
                     verify: bool | None = None, witness_limit: int = 81) -> list[ParamRow]:
    """Table rows (e, n, kMax, method) for one exponent; rows whose kMax comes
    from a closed form are verified by building the kMax code."""
    p, m, q = ctx.p, ctx.m, ctx.q
    e_r = reduced_e(m, e)
    s = math.gcd(e_r, m)
    ps, pe = p ** s, p ** e_r
    case = gcd_case(p, m, e_r)
    verify = q <= VERIFY_LIMIT if verify is None else verify
    max_n = q + 1 if max_n is None else max_n
    rows: list[ParamRow] = []

    def add(n, kmax, method, builder):
        if kmax < 1 or n > max_n:
            return
        ok = _try(builder, kmax) if verify else False
        rows.append(ParamRow(p, m, e, n, kmax, method, ok))

    def add_searched(n, hi, method, builder):
        if n > max_n or hi < 1:
            return
        kmax = _search_kmax(builder, hi)
        if kmax:
            rows.append(ParamRow(p, m, e, n, kmax, method, True))

    if case == 1:
        for n in range(2, min(ps + 1, q) + 1):
            ext = n > ps
            add(n, n // 2, "affine",
                lambda k, n=n, ext=ext: construct_affine(ctx, e, n, k, extended=ext))
    elif case == 2 and ps <= witness_limit:
        for n in range(2, min(ps + 1, q) + 1):
            ext = n > ps
            add_searched(n, n // 2, "affine",
                         lambda k, n=n, ext=ext: construct_affine(ctx, e, n, k, extended=ext))

    if case in (1, 2) and s < m and (case == 1 or ps <= witness_limit):
        for n in range(ps + 2, min(ps * ps, q) + 1):
            part = balanced_partition(n, ps)
            hi = min(part) // 2
            fn = lambda k, part=part: construct_coset_sum(ctx, e, part, k)
            if case == 1:
                add(n, hi, "coset_blocks", fn)
            else:
                add_searched(n, hi, "coset_blocks", fn)

    if case == 1:
        lo = ps + 1
        lengths = ([n for n in range(lo, q + 1)
                    if n == q or (n - 2) % (pe + 1) == 0 or n == lo]
                   if q <= 1024 else sorted({lo, q}))
        for n in lengths:
            add(n, (n + pe - 1) // (pe + 1), "coset_lambda1",
                lambda k, n=n: construct_lambda1(ctx, e, n, k))

    if case == 3 and ps * ps <= witness_limit:
        for n in range(2, ps + 2):
            add_searched(n, min(n // 2, hermitian_k_limit(n, ps)), "hermitian",
                         lambda k, n=n: construct_hermitian_lift(ctx, e, n, k))
    if case == 3:
        Q = ps * ps
        add(Q, ps - 1, "hermitian", lambda k: construct_hermitian_lift(ctx, e, Q, k))
        add(Q + 1, ps - 2, "hermitian", lambda k: construct_hermitian_lift(ctx, e, Q + 1, k))
        add(Q + 1, ps, "hermitian_isolated",
            lambda k: construct_hermitian_lift(ctx, e, Q + 1, k))

    if p == 2 and e_r and m % e_r == 0 and (m // e_r) % 2 == 1:
        for r in range(1, pe + 2):
            n = r * (pe - 1) + 1
            if r <= ctx.order // (pe - 1):
                add(n, (pe + r - 1) // 2, "theta",
                    lambda k, r=r: construct_theta_blocks(ctx, e, r, k))

    add(q + 1, q_plus_1_kmax(p, m, e), "qplus1", lambda k: construct_q_plus_1(ctx, e, k))
    iso = q_plus_1_isolated(p, m, e)
    if iso is not None:
        add(q + 1, iso, "qplus1_isolated", lambda k: construct_q_plus_1(ctx, e, k))

    rows.sort(key=lambda r: (r.e, r.n, r.method))
    return rows
