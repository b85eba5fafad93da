"""GRS / extended GRS codes, generic linear codes, and MDS certificates."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from gso import linalg
from gso.gf import FieldCtx


class CodeError(ValueError):
    pass


class DuplicateLocator(CodeError):
    pass


class ZeroMultiplier(CodeError):
    pass


class BadDimension(CodeError):
    pass


class ZeroScale(CodeError):
    pass


class ZeroLocator(CodeError):
    pass


class BudgetExceeded(CodeError):
    pass


DISTANCE_BUDGET = 1 << 22


@dataclass(frozen=True, eq=False)
class GrsSpec:
    """GRS_k(a, v), or GRS_k(a, v, inf) when ``extended`` (length n + 1)."""

    ctx: FieldCtx = field(repr=False)
    a: tuple[int, ...]
    v: tuple[int, ...]
    k: int
    extended: bool = False

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        v = tuple(int(x) for x in self.v)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)
        if len(a) != len(v):
            raise linalg.LengthMismatch("locators and multipliers differ in length")
        if len(set(a)) != len(a):
            raise DuplicateLocator("locators must be distinct")
        if any(x == 0 for x in v):
            raise ZeroMultiplier("multipliers must be nonzero")
        if any(not 0 <= x < self.ctx.q for x in a + v):
            raise CodeError("element outside the field")
        if not 1 <= self.k <= len(a) + int(self.extended):
            raise BadDimension(f"k={self.k} for n={len(a)}")
        if not self.extended and self.k > len(a):
            raise BadDimension(f"k={self.k} > n={len(a)}")

    @property
    def n(self) -> int:
        """Number of locators (the code length is ``length``)."""
        return len(self.a)

    @property
    def length(self) -> int:
        return len(self.a) + int(self.extended)

    @cached_property
    def a_arr(self) -> np.ndarray:
        return np.array(self.a, dtype=np.int64)

    @cached_property
    def v_arr(self) -> np.ndarray:
        return np.array(self.v, dtype=np.int64)

    def with_(self, **kw) -> "GrsSpec":
        d = dict(ctx=self.ctx, a=self.a, v=self.v, k=self.k, extended=self.extended)
        d.update(kw)
        return GrsSpec(**d)

    def __eq__(self, other):
        return (isinstance(other, GrsSpec) and self.ctx.same_field(other.ctx)
                and (self.a, self.v, self.k, self.extended)
                == (other.a, other.v, other.k, other.extended))

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.m, self.a, self.v, self.k, self.extended))

    def digest(self) -> str:
        doc = [self.ctx.p, self.ctx.m, list(self.ctx.modulus), self.k,
               self.extended, list(self.a), list(self.v)]
        return hashlib.sha256(json.dumps(doc).encode()).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class LinearCode:
    ctx: FieldCtx = field(repr=False)
    G: np.ndarray = field(repr=False)
    origin: GrsSpec | None = None

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @cached_property
    def rank(self) -> int:
        return linalg.rank(self.ctx, self.G)


@dataclass(frozen=True)
class MdsCertificate:
    kind: str  # structural | exhaustive | unknown | not_mds
    d: int | None = None


@dataclass(frozen=True, eq=False)
class CertifiedCode:
    spec: GrsSpec
    e: int
    hull_dim: int
    mds: MdsCertificate
    gram_zero: bool
    meta: dict = field(default_factory=dict)

    @property
    def ctx(self):
        return self.spec.ctx

    @property
    def n(self):
        return self.spec.length

    @property
    def k(self):
        return self.spec.k

    def code(self) -> LinearCode:
        return code_of(self.spec)


def u_vector(ctx: FieldCtx, a, chunk: int = 1 << 21) -> np.ndarray:
    """u_i = prod_{j != i} (a_i - a_j)^{-1}."""
    a = np.asarray(a, dtype=np.int64)
    n = len(a)
    if len(set(a.tolist())) != n:
        raise DuplicateLocator("locators must be distinct")
    if n == ctx.q:
        # prod of all nonzero elements is -1
        return np.full(n, int(ctx.neg(1)), dtype=np.int64)
    logsum = np.zeros(n, dtype=np.int64)
    step = max(1, chunk // max(n, 1))
    for s in range(0, n, step):
        d = ctx.sub(a[s:s + step, None], a[None, :])
        lg = ctx.log_table[d]
        lg[d == 0] = 0  # the diagonal
        logsum[s:s + step] = lg.sum(axis=1) % ctx.order
    return ctx.exp_table[(-logsum) % ctx.order]


def generator(spec: GrsSpec) -> np.ndarray:
    ctx = spec.ctx
    P = ctx.pow_many(spec.a_arr, range(spec.k)).T  # k x n, row i = a^i
    G = ctx.mul(P, spec.v_arr[None, :])
    if spec.extended:
        col = np.zeros((spec.k, 1), dtype=np.int64)
        col[-1, 0] = 1
        G = np.concatenate([G, col], axis=1)
    return G


def code_of(spec: GrsSpec) -> LinearCode:
    return LinearCode(spec.ctx, generator(spec), spec)


def equiv_transform(spec: GrsSpec, scale: int, shift: int, lam="auto") -> GrsSpec:
    """Locators a -> scale*a + shift; multipliers scaled so the code is unchanged.

    Non-extended codes accept any nonzero ``lam`` (the code is the same for
    every choice); extended codes force lam = scale^(1-k).
    """
    ctx = spec.ctx
    if scale == 0:
        raise ZeroScale("scale must be nonzero")
    a2 = ctx.add(ctx.mul(spec.a_arr, scale), shift)
    if spec.extended or lam == "auto":
        lam = int(ctx.pow(scale, 1 - spec.k)) if spec.extended else 1
    if lam == 0:
        raise ZeroScale("multiplier scale must be nonzero")
    v2 = ctx.mul(spec.v_arr, lam)
    return spec.with_(a=tuple(a2.tolist()), v=tuple(v2.tolist()))


def normalize_last(spec: GrsSpec) -> GrsSpec:
    """Move the last locator to 0 and its multiplier to 1 (non-extended)."""
    ctx = spec.ctx
    return equiv_transform(spec, 1, int(ctx.neg(spec.a[-1])),
                           int(ctx.inv(spec.v[-1])))


def shift_off_zero(spec: GrsSpec) -> tuple[GrsSpec, int]:
    """Translate locators by the least b with 0 not in a + b."""
    ctx = spec.ctx
    if 0 not in spec.a:
        return spec, 0
    if spec.n >= ctx.q:
        raise ZeroLocator("every field element is a locator")
    for b in range(1, ctx.q):
        shifted = ctx.add(spec.a_arr, b)
        if not np.any(shifted == 0):
            return equiv_transform(spec, 1, b), b
    raise AssertionError("unreachable")  # pragma: no cover


def egrs_to_grs(spec: GrsSpec) -> GrsSpec:
    """GRS_k(a, v, inf) = GRS_k((a^-1, 0), (v * a^(k-1), 1)) for nonzero a."""
    if not spec.extended:
        raise CodeError("spec is not extended")
    ctx = spec.ctx
    if 0 in spec.a:
        raise ZeroLocator("locators must be nonzero; use shift_off_zero first")
    a2 = np.append(ctx.inv(spec.a_arr), 0)
    v2 = np.append(ctx.mul(spec.v_arr, ctx.pow(spec.a_arr, spec.k - 1)), 1)
    return GrsSpec(ctx, tuple(a2.tolist()), tuple(v2.tolist()), spec.k, False)


def extend_phi(ctx: FieldCtx, G, v) -> LinearCode:
    """Generator [G diag(v) | (0,...,0,1)^T]."""
    G = linalg.as_matrix(G)
    v = np.asarray(v, dtype=np.int64)
    if v.shape[0] != G.shape[1]:
        raise linalg.LengthMismatch("multiplier length differs from code length")
    col = np.zeros((G.shape[0], 1), dtype=np.int64)
    col[-1, 0] = 1
    return LinearCode(ctx, np.concatenate([ctx.mul(G, v[None, :]), col], axis=1))


# -- minimum distance ------------------------------------------------------

def _span(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """All q^r linear combinations of the given rows."""
    words = np.zeros((1, rows.shape[1]), dtype=np.int64)
    scalars = ctx.elements
    for g in rows:
        mult = ctx.mul(scalars[:, None], g[None, :])  # q x n
        words = ctx.add(words[None, :, :], mult[:, None, :]).reshape(-1, rows.shape[1])
    return words


def min_distance_exhaustive(C: LinearCode, budget: int = DISTANCE_BUDGET,
                            block: int = 1 << 16) -> int:
    """Exact minimum weight, scanning one codeword per projective point."""
    ctx, G = C.ctx, linalg.as_matrix(C.G)
    k, n = G.shape
    if ctx.q ** k > budget:
        raise BudgetExceeded(f"q^k = {ctx.q}^{k} exceeds {budget}")
    best = n + 1
    # words whose message has its last nonzero coordinate j equal to 1
    t = 0
    while t < k and ctx.q ** (t + 1) <= block:
        t += 1
    spans = {}
    for j in range(k):
        nlow = min(j, t)
        if nlow not in spans:
            spans[nlow] = _span(ctx, G[:nlow])
        low = spans[nlow]
        outer_rows = G[nlow:j]
        for idx in range(ctx.q ** len(outer_rows)):
            off = G[j].copy()
            r = idx
            for g in outer_rows:
                c = r % ctx.q
                r //= ctx.q
                if c:
                    off = ctx.add(off, ctx.mul(c, g))
            words = ctx.add(low, off[None, :])
            best = min(best, int(np.count_nonzero(words, axis=1).min()))
            if best == 1:
                return 1
    return best


def is_mds(C: LinearCode, scan: bool = False, budget: int = DISTANCE_BUDGET) -> MdsCertificate:
    """Structural certificate for GRS-backed codes; ``scan`` (or a code with
    no GRS origin) runs the exhaustive search when q^k fits the budget."""
    k, n = C.G.shape
    if C.origin is not None and not scan:
        return MdsCertificate("structural", n - k + 1)
    if C.ctx.q ** k <= budget:
        d = min_distance_exhaustive(C, budget=budget)
        return MdsCertificate("exhaustive" if d == n - k + 1 else "not_mds", d)
    if C.origin is not None:
        return MdsCertificate("structural", n - k + 1)
    return MdsCertificate("unknown")


def weight_n_minus_k_word(C: LinearCode) -> bool:
    """True when some nonzero codeword has weight <= n-k (not MDS)."""
    return min_distance_exhaustive(C) <= C.n - C.k
