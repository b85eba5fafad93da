"""e-Galois self-orthogonality: Gram tests, the H-vector systems, and the
lambda(x) criterion in both directions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from gso import linalg, poly
from gso.codes import GrsSpec, LinearCode, code_of, u_vector
from gso.gf import FieldCtx, NotInH, galois_root, h_subgroup


class PreconditionViolated(ValueError):
    pass


class MultiplierFailure(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"index {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True, eq=False)
class GramReport:
    e: int
    gram: np.ndarray
    is_zero: bool
    hull_dim: int


# -- Gram matrices ---------------------------------------------------------

def gram_generic(ctx: FieldCtx, G, e: int) -> np.ndarray:
    G = linalg.as_matrix(G)
    return ctx.matmul(G, ctx.frob(G, e).T)


def gram_grs(spec: GrsSpec, e: int, chunk: int = 1 << 21) -> np.ndarray:
    """Gram of the GRS generator via power sums.

    Entry (i, j) is sum_l a_l^(i + j p^e) x_l with x = v^(p^e + 1), plus 1 at
    (k-1, k-1) for the extended column.  Exponents only matter mod q-1 for
    nonzero locators, so at most q-1 distinct power sums are needed.
    """
    ctx, k = spec.ctx, spec.k
    pe = ctx.p ** (e % ctx.m)
    x = ctx.pow(spec.v_arr, pe + 1)
    a = spec.a_arr
    nz = a != 0
    la = ctx.log_table[a[nz]]
    xn = x[nz]
    ii, jj = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    expo = (ii + jj * (pe % ctx.order)) % ctx.order
    need, inv = np.unique(expo, return_inverse=True)
    S = np.zeros(len(need), dtype=np.int64)
    step = max(1, chunk // max(len(la), 1))
    for s in range(0, len(need), step):
        r = need[s:s + step]
        pw = ctx.exp_table[(r[:, None] * la[None, :]) % ctx.order]
        S[s:s + step] = ctx.sum(ctx.mul(pw, xn[None, :]), axis=1)
    gram = S[inv.reshape(k, k)]
    if not np.all(nz):
        x0 = int(x[~nz][0])
        gram[0, 0] = int(ctx.add(gram[0, 0], x0))
    if spec.extended:
        gram[k - 1, k - 1] = int(ctx.add(gram[k - 1, k - 1], 1))
    return gram


def _report(ctx, gram, e) -> GramReport:
    k = gram.shape[0]
    r = linalg.rank(ctx, gram)
    return GramReport(e, gram, r == 0, k - r)


def is_galois_so_direct(C, e: int, method: str = "auto") -> GramReport:
    """Gram report of a LinearCode or GrsSpec under the e-Galois product.

    ``method``: "generic" multiplies G by sigma^e(G)^T; "grs" uses power
    sums (needs a GRS origin); "auto" picks grs when available.
    """
    if isinstance(C, GrsSpec):
        spec, ctx = C, C.ctx
        C = None
    else:
        spec, ctx = C.origin, C.ctx
    if method == "auto":
        method = "grs" if spec is not None else "generic"
    if method == "grs":
        if spec is None:
            raise ValueError("grs method needs a GrsSpec origin")
        gram = gram_grs(spec, e)
    else:
        G = C.G if C is not None else code_of(spec).G
        gram = gram_generic(ctx, G, e)
    return _report(ctx, gram, e)


def hull_dim(C, e: int, method: str = "auto") -> int:
    return is_galois_so_direct(C, e, method).hull_dim


def galois_dual_generator(ctx: FieldCtx, G, e: int) -> np.ndarray:
    """Basis of C^{perp_e} = {x : sum x_l sigma^e(g_l) = 0 for every row g}."""
    return linalg.nullspace(ctx, ctx.frob(linalg.as_matrix(G), e))


def hull_dim_bruteforce(ctx: FieldCtx, G, e: int) -> int:
    """dim(C ∩ C^{perp_e}) by subspace intersection (oracle)."""
    G = linalg.as_matrix(G)
    D = galois_dual_generator(ctx, G, e)
    if D.shape[0] == 0:
        return 0
    return linalg.subspace_intersection_dim(ctx, G, D)


def duality_symmetry_check(C, e: int) -> bool:
    ctx = C.ctx
    e2 = (ctx.m - e) % ctx.m
    return is_galois_so_direct(C, e).is_zero == is_galois_so_direct(C, e2).is_zero


# -- the H-vector systems --------------------------------------------------

def affine_frobenius_params(ctx: FieldCtx, a, e: int):
    """(alpha, beta) with sigma^e(a_i) = alpha a_i + beta for all i, or None."""
    a = np.asarray(a, dtype=np.int64)
    fa = ctx.frob(a, e)
    if len(a) < 2:
        return (1, int(ctx.sub(fa[0], a[0]))) if len(a) else (1, 0)
    alpha = int(ctx.div(ctx.sub(fa[1], fa[0]), ctx.sub(a[1], a[0])))
    if alpha == 0:
        return None
    beta = int(ctx.sub(fa[0], ctx.mul(alpha, a[0])))
    if np.array_equal(fa, ctx.add(ctx.mul(alpha, a), beta)):
        return alpha, beta
    return None


@dataclass(frozen=True, eq=False)
class SoSystem:
    A: np.ndarray  # k^2 x n, row (i, j) = a^(p^e i + j)
    rhs: np.ndarray
    B: np.ndarray | None  # rows a^0 .. a^((k-1)(p^e+1)), when p^e <= k
    rhs_B: np.ndarray | None
    reduced: np.ndarray | None  # rows a^0 .. a^(2k-2), when sigma^e(a) is affine in a
    rhs_reduced: np.ndarray | None


def so_system(spec: GrsSpec, e: int) -> SoSystem:
    """Linear systems in x = v^(p^e+1) equivalent to self-orthogonality."""
    ctx, k = spec.ctx, spec.k
    pe = ctx.p ** e
    a = spec.a_arr
    exps = [pe * i + j for i in range(k) for j in range(k)]
    A = ctx.pow_many(a, exps).T
    minus1 = int(ctx.neg(1))

    def rhs(rows):
        b = np.zeros(rows, dtype=np.int64)
        if spec.extended:
            b[-1] = minus1
        return b

    B = rB = None
    if pe <= k:
        top = (k - 1) * (pe + 1)
        B = ctx.pow_many(a, range(top + 1)).T
        rB = rhs(top + 1)
    R = rR = None
    ab = affine_frobenius_params(ctx, a, e)
    if ab is not None:
        R = ctx.pow_many(a, range(2 * k - 1)).T
        rR = rhs(2 * k - 1)
        if spec.extended:
            rR[-1] = int(ctx.neg(ctx.pow(ab[0], 1 - k)))
    return SoSystem(A, rhs(k * k), B, rB, R, rR)


def system_holds(ctx: FieldCtx, M, rhs, x) -> bool:
    return bool(np.array_equal(ctx.matmul(M, np.asarray(x)[:, None])[:, 0], rhs))


def h_vector_search(spec: GrsSpec, e: int, which: str = "A", limit: int = 1 << 20):
    """All x in H^n solving the chosen system (oracle; small n only)."""
    ctx = spec.ctx
    sysm = so_system(spec, e)
    M, rhs = {"A": (sysm.A, sysm.rhs), "B": (sysm.B, sysm.rhs_B),
              "reduced": (sysm.reduced, sysm.rhs_reduced)}[which]
    if M is None:
        raise PreconditionViolated(f"system {which} not available")
    H = h_subgroup(ctx, e).elements()
    if len(H) ** spec.n > limit:
        raise PreconditionViolated("H^n too large to scan")
    X = np.array(list(itertools.product(H.tolist(), repeat=spec.n)), dtype=np.int64)
    prod = ctx.matmul(X, M.T)  # |H|^n x rows
    ok = np.all(prod == rhs[None, :], axis=1)
    return X[ok]


def phi_matrix(ctx: FieldCtx, G, e: int) -> np.ndarray:
    """Rows g_i * sigma^e(g_j): the code C * sigma^e(C) spanned row by row."""
    G = linalg.as_matrix(G)
    fG = ctx.frob(G, e)
    return ctx.mul(G[:, None, :], fG[None, :, :]).reshape(-1, G.shape[1])


def phi_criterion(ctx: FieldCtx, G, v, e: int) -> bool:
    """Phi_v(C) is e-SO iff v^(p^e+1) is Euclidean-orthogonal to C * sigma^e(C)."""
    x = ctx.pow(np.asarray(v), ctx.p ** e + 1)
    return not np.any(ctx.matmul(phi_matrix(ctx, G, e), x[:, None]))


# -- lambda(x) witnesses ---------------------------------------------------

@dataclass(frozen=True)
class LambdaWitness:
    lam: tuple[int, ...]
    kind: str  # "grs" (nonzero) or "egrs" (monic)
    degree_bound: int

    @property
    def degree(self) -> int:
        return poly.deg(self.lam)


def degree_bound(n: int, k: int, pe: int, extended: bool) -> int:
    top = n - (k - 1) * (pe + 1)
    return top - 1 if extended else top - 2


def k_bracket(n: int, pe: int, extended: bool) -> tuple[int, int]:
    hi = (n + pe) // (pe + 1) if extended else (n + pe - 1) // (pe + 1)
    return pe, hi


def check_witness(lam: LambdaWitness, n: int, k: int, pe: int, affine: bool = False,
                  lead: int = 1):
    f = poly.trim(lam.lam)
    ext = lam.kind == "egrs"
    if affine:
        bound = n - 2 * k + (1 if ext else 0)
    else:
        bound = degree_bound(n, k, pe, ext)
    if not f:
        raise PreconditionViolated("lambda is zero")
    if ext:
        if f[-1] != lead or len(f) - 1 != bound:
            raise PreconditionViolated(
                f"EGRS lambda must have degree {bound} and leading coefficient {lead}")
    elif len(f) - 1 > bound:
        raise PreconditionViolated(f"GRS lambda degree exceeds {bound}")


def affine_lead(ctx: FieldCtx, a, e: int, k: int) -> int:
    """Leading coefficient of an EGRS witness in the affine form: alpha^(1-k).

    With sigma^e(a) = alpha a + beta the last Gram row expands to
    alpha^(k-1) a^(2k-2) + (lower powers), so the monic normalisation only
    holds when alpha = 1."""
    ab = affine_frobenius_params(ctx, a, e)
    if ab is None:
        raise PreconditionViolated("locators are not affine under sigma^e")
    return int(ctx.pow(ab[0], 1 - k))


def lambda_to_multipliers(ctx: FieldCtx, a, lam: LambdaWitness, e: int,
                          k: int | None = None, affine: bool = False) -> np.ndarray:
    """v with v_i^(p^e+1) = lambda(a_i) u_i (GRS) or -lambda(a_i) u_i (EGRS)."""
    a = np.asarray(a, dtype=np.int64)
    if k is not None:
        lead = affine_lead(ctx, a, e, k) if affine and lam.kind == "egrs" else 1
        check_witness(lam, len(a), k, ctx.p ** e, affine, lead)
    u = u_vector(ctx, a)
    w = ctx.mul(poly.evaluate(ctx, lam.lam, a), u)
    if lam.kind == "egrs":
        w = ctx.neg(w)
    zero = np.nonzero(w == 0)[0]
    H = h_subgroup(ctx, e)
    bad = np.nonzero(~H.contains(w))[0]
    if len(zero) and (not len(bad) or zero[0] <= bad[0]):
        raise MultiplierFailure(int(zero[0]), "Zero")
    if len(bad):
        raise MultiplierFailure(int(bad[0]), "NotInH")
    try:
        return np.asarray(galois_root(ctx, w, e), dtype=np.int64).reshape(-1)
    except NotInH as exc:  # pragma: no cover - excluded by the membership test
        raise MultiplierFailure(-1, "NotInH") from exc


def multipliers_to_lambda(spec: GrsSpec, e: int, affine: bool = False,
                          enforce_bracket: bool = True) -> LambdaWitness | None:
    """Interpolate lambda from x = v^(p^e+1) in the basis {a^l * u}.

    Returns None when no polynomial within the degree bound fits (then the
    code is not self-orthogonal when k is inside the bracket).
    """
    ctx, n, k = spec.ctx, spec.n, spec.k
    pe = ctx.p ** e
    if enforce_bracket and not affine:
        if 2 * e > ctx.m:
            raise PreconditionViolated("needs 2e <= m")
        lo, hi = k_bracket(n, pe, spec.extended)
        if not lo <= k <= hi:
            raise PreconditionViolated(f"k={k} outside [{lo}, {hi}]")
    if affine:
        D = n - 2 * k + (1 if spec.extended else 0)
    else:
        D = degree_bound(n, k, pe, spec.extended)
    if D < 0:
        return None
    x = ctx.pow(spec.v_arr, pe + 1)
    if spec.extended:
        x = ctx.neg(x)
    u = u_vector(ctx, spec.a_arr)
    M = ctx.mul(ctx.pow_many(spec.a_arr, range(D + 1)), u[:, None])  # n x (D+1)
    sol = linalg.solve_affine(ctx, M, x)
    if sol is None:
        return None
    lam = poly.trim(sol)
    if spec.extended:
        lead = affine_lead(ctx, spec.a_arr, e, k) if affine else 1
        if len(lam) - 1 != D or lam[-1] != lead:
            return None
        return LambdaWitness(lam, "egrs", D)
    if not lam:
        return None
    return LambdaWitness(lam, "grs", D)
