"""MDS codes with prescribed Galois hull dimension, and the EAQECC / EACQC
parameters derived from them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gso.codes import CertifiedCode, GrsSpec, MdsCertificate
from gso.orth import hull_dim


class QuantumError(ValueError):
    pass


class TargetOutOfRange(QuantumError):
    pass


class PerturbationExhausted(QuantumError):
    def __init__(self, best: int, target: int):
        super().__init__(f"reached hull {best}, wanted {target}")
        self.best = best
        self.target = target


class NegativeParameter(QuantumError):
    pass


class BaseMismatch(QuantumError):
    pass


@dataclass(frozen=True)
class HullTarget:
    rule: int
    i: int = 0
    l: int = 0


@dataclass(frozen=True)
class QuantumParams:
    n: int
    k: int
    d: int
    c: int
    q: int
    d_lower_bound: bool = False

    def __str__(self):
        d = f">={self.d}" if self.d_lower_bound else str(self.d)
        return f"[[{self.n},{self.k},{d};{self.c}]]_{self.q}"


@dataclass(frozen=True)
class SingletonReport:
    passed: bool
    failed: tuple[int, ...] = ()
    mds: bool = False


# -- structural steps ------------------------------------------------------

def _prod_diff(ctx, a, pts):
    out = np.ones(len(a), dtype=np.int64)
    for b in pts:
        out = ctx.mul(out, ctx.sub(a, int(b)))
    return out


def _fresh_locators(ctx, a, count):
    used = np.zeros(ctx.q, dtype=bool)
    used[np.asarray(a, dtype=np.int64)] = True
    return np.nonzero(~used)[0][:count]


def _shorten(spec: GrsSpec, i: int) -> GrsSpec:
    """Codewords vanishing on the last i finite positions, those removed."""
    ctx = spec.ctx
    a, v = spec.a_arr, spec.v_arr
    keep, drop = a[:-i], a[-i:]
    v2 = ctx.mul(v[:-i], _prod_diff(ctx, keep, drop))
    return GrsSpec(ctx, keep, v2, spec.k - i, spec.extended)


def _puncture(spec: GrsSpec, i: int) -> GrsSpec:
    return GrsSpec(spec.ctx, spec.a[:-i], spec.v[:-i], spec.k, spec.extended)


def _lengthen(spec: GrsSpec, i: int, grow: int) -> GrsSpec:
    """Add i coordinates (the infinity column last, if it is needed) and raise
    the dimension by ``grow`` (0 or i)."""
    ctx = spec.ctx
    a, v = spec.a_arr, spec.v_arr
    free = ctx.q - len(a)
    extended = spec.extended
    nfin = i
    if i > free:
        if extended or i != free + 1:
            raise TargetOutOfRange("length would exceed q+1")
        nfin, extended = free, True
    B = _fresh_locators(ctx, a, nfin)
    if grow:
        # old part divided by prod (a - b) so the polynomials divisible by
        # prod (x - b) reproduce the base code on the old coordinates
        v = ctx.div(v, _prod_diff(ctx, a, B))
    a2 = np.concatenate([a, B])
    v2 = np.concatenate([v, np.ones(nfin, dtype=np.int64)])
    return GrsSpec(ctx, a2, v2, spec.k + grow, extended)


def _reduce_dim(spec: GrsSpec, i: int) -> GrsSpec:
    from gso.construct import _subcode_shift
    if not spec.extended:
        return spec.with_(k=spec.k - i)
    ctx = spec.ctx
    h = _subcode_shift(ctx, spec.a_arr, i)
    if h is None:
        raise TargetOutOfRange("no root-free shift for the extended subcode")
    from gso import poly
    v = ctx.mul(spec.v_arr, poly.evaluate(ctx, h, spec.a_arr))
    return spec.with_(k=spec.k - i, v=tuple(v.tolist()))


def check_target(code: CertifiedCode, t: HullTarget) -> tuple[int, int]:
    """Validate t against the rule's range; returns the output (n, k)."""
    n, k, q = code.n, code.k, code.ctx.q
    if q <= 4:
        raise TargetOutOfRange("needs q > 4")
    if not code.gram_zero:
        raise TargetOutOfRange("base code must be self-orthogonal")
    r, i, l = t.rule, t.i, t.l
    if r == 1:
        if not 0 <= l <= k:
            raise TargetOutOfRange(f"l must be in [0, {k}]")
        return n, k
    if r not in range(2, 8):
        raise TargetOutOfRange(f"unknown rule {r}")
    hi = k
    if r in (4, 6):
        hi = min(k, q + 1 - n)
    if r in (5, 6, 7) and n >= q + 1:
        raise TargetOutOfRange("rule needs n < q+1")
    if not 1 <= i <= hi:
        raise TargetOutOfRange(f"i must be in [1, {hi}]")
    if not 0 <= l <= k - i:
        raise TargetOutOfRange(f"l must be in [0, {k - i}]")
    shape = {2: (n - i, k - i), 3: (n - i, k), 4: (n + i, k),
             5: (n, k + i), 6: (n + i, k + i), 7: (n, k - i)}[r]
    if shape[1] < 1 or shape[1] > shape[0]:
        raise TargetOutOfRange(f"[{shape[0]},{shape[1]}] is not a code shape")
    return shape


def structural_step(code: CertifiedCode, t: HullTarget) -> GrsSpec:
    """A spec of the target shape whose e-hull has dimension >= l."""
    spec, i = code.spec, t.i
    r = t.rule
    if r in (2, 3) and spec.n - i < 1:
        raise TargetOutOfRange("not enough finite coordinates")
    if r == 1:
        return spec
    if r == 2:
        return _shorten(spec, i)
    if r == 3:
        return _puncture(spec, i)
    if r == 4:
        return _lengthen(spec, i, 0)
    if r == 5:
        return spec.with_(k=spec.k + i)
    if r == 6:
        return _lengthen(spec, i, i)
    return _reduce_dim(spec, i)


# -- hull lowering ---------------------------------------------------------

def _perturbed(spec: GrsSpec, scale: np.ndarray, t: int) -> GrsSpec:
    v = spec.v_arr.copy()
    v[:t] = spec.ctx.mul(v[:t], scale[:t])
    return spec.with_(v=tuple(v.tolist()))


def lower_hull(spec: GrsSpec, e: int, l: int, seed: int = 0, tries: int = 32):
    """Scale multipliers one coordinate at a time until the hull is l.

    Each scaled coordinate is a rank-one change of the Gram matrix, so the
    hull moves by at most 1 per step and bisection over the number of
    scaled coordinates finds l once the fully scaled code is at or below it.
    """
    ctx = spec.ctx
    h0 = hull_dim(spec, e)
    if h0 < l:
        raise PerturbationExhausted(h0, l)
    if h0 == l:
        return spec, h0
    pe1 = ctx.p ** e + 1
    pool = ctx.elements[1:]
    if not np.any(ctx.pow(pool, pe1) != 1):
        raise PerturbationExhausted(h0, l)
    # 1 stays in the pool: when every other scale moves x by the same
    # factor, scaling all coordinates would only rescale the code
    best = h0
    for attempt in range(tries):
        rng = np.random.default_rng([seed, attempt])
        scale = rng.choice(pool, size=spec.n)
        N = spec.n
        h_end = hull_dim(_perturbed(spec, scale, N), e)
        best = min(best, h_end)
        if h_end > l:
            continue
        lo, hi = 0, N  # h(lo) >= l >= h(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            h = hull_dim(_perturbed(spec, scale, mid), e)
            if h == l:
                return _perturbed(spec, scale, mid), h
            if h > l:
                lo = mid
            else:
                hi = mid
        for t in (lo, hi):
            out = _perturbed(spec, scale, t)
            if hull_dim(out, e) == l:
                return out, l
    raise PerturbationExhausted(best, l)


def propagate(code: CertifiedCode, t: HullTarget, seed: int = 0) -> CertifiedCode:
    n, k = check_target(code, t)
    spec = structural_step(code, t)
    assert (spec.length, spec.k) == (n, k)
    out, _ = lower_hull(spec, code.e, t.l, seed)
    measured = hull_dim(out, code.e)
    if measured != t.l:  # pragma: no cover - lower_hull measures already
        raise PerturbationExhausted(measured, t.l)
    meta = dict(code.meta, rule=t.rule, i=t.i, l=t.l, base=code.spec.digest())
    return CertifiedCode(out, code.e, measured, MdsCertificate("structural", n - k + 1),
                         measured == k, meta)


# -- quantum parameters ----------------------------------------------------

def eaqecc_params(n: int, k: int, hull: int, q: int) -> tuple[QuantumParams, QuantumParams]:
    """Both EAQECC tuples obtainable from an [n,k] MDS code with the given hull."""
    if hull < 0 or hull > k:
        raise NegativeParameter(f"hull {hull} outside [0, {k}]")
    first = (n, k - hull, n - k + 1, n - k - hull)
    second = (n, n - k - hull, k + 1, k - hull)
    for tup in (first, second):
        if min(tup) < 0:
            raise NegativeParameter(f"negative entry in {tup}")
    return QuantumParams(*first, q), QuantumParams(*second, q)


def ea_singleton_check(qp: QuantumParams) -> SingletonReport:
    n, k, d, c = qp.n, qp.k, qp.d, qp.c
    failed = []
    if k > c + max(0, n - 2 * d + 2):
        failed.append(1)
    if k > n - d + 1:
        failed.append(2)
    third = 2 * d >= n + 2
    # 3d - 3 - n > 0 whenever 2d >= n + 2, so multiply through
    if third and k * (3 * d - 3 - n) > (n - d + 1) * (c + 2 * d - 2 - n):
        failed.append(3)
    if third:
        mds = k * (3 * d - 3 - n) == (n - d + 1) * (c + 2 * d - 2 - n)
    else:
        mds = k == c + max(0, n - 2 * d + 2)
    return SingletonReport(not failed, tuple(failed), mds and not failed)


def eacqc_compose(inner: QuantumParams, outer: QuantumParams) -> QuantumParams:
    """Concatenate an inner [[n',k',d';c']]_p with an outer code over p^k'."""
    if outer.q != inner.q ** inner.k:
        raise BaseMismatch(f"outer base {outer.q} != {inner.q}^{inner.k}")
    return QuantumParams(inner.n * outer.n, inner.k * outer.k, inner.d * outer.d,
                         inner.c * outer.n + outer.c * inner.k, inner.q, True)
