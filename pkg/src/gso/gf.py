"""Table-driven arithmetic in GF(p^m).

Elements are integers in ``[0, q)``: the coefficient vector
``(c_0, ..., c_{m-1})`` of the polynomial-basis representation packed as
``sum(c_i * p**i)``.  Multiplication goes through discrete-log tables,
addition through base-p digits (XOR when p == 2).  Every arithmetic method
accepts Python ints or integer numpy arrays and broadcasts.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_TABLE_LIMIT = 1 << 24


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class DegreeTooLarge(FieldError):
    pass


class NotIrreducible(FieldError):
    pass


class NotADivisor(FieldError):
    pass


class NotInH(FieldError):
    pass


def table_limit() -> int:
    env = os.environ.get("GSO_TABLE_LIMIT")
    return int(env) if env else DEFAULT_TABLE_LIMIT


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p (ascending coefficient lists) ---------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a, n, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while n:
        if n & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        n >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_fp(f, p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**m, f, p) != _pmod(x, f, p):
        return False
    for r in prime_factors(m):
        h = _ppowmod(x, p ** (m // r), f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _x_is_primitive(f, p: int) -> bool:
    m = len(f) - 1
    order = p**m - 1
    x = [0, 1]
    if _ppowmod(x, order, f, p) != [1]:
        return False
    return all(_ppowmod(x, order // r, f, p) != [1] for r in prime_factors(order))


def least_primitive_modulus(p: int, m: int) -> tuple[int, ...]:
    """Monic degree-m polynomial over F_p, least in lexicographic order
    (highest coefficient first), that is irreducible with a primitive root."""
    if m == 1:
        # x - g for the least primitive root g mod p
        for g in range(1, p):
            if p == 2 or all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1)):
                return ((-g) % p, 1)
    for low in range(p**m):
        coeffs = [(low // p**i) % p for i in range(m)]
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_irreducible_fp(f, p) and _x_is_primitive(f, p):
            return tuple(f)
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


# -- the field -------------------------------------------------------------

@dataclass(frozen=True, eq=False, repr=False)
class FieldCtx:
    """Immutable description of F_{p^m} with log/exp tables."""

    p: int
    m: int
    modulus: tuple[int, ...]
    w: int
    exp_table: np.ndarray = field(compare=False)
    log_table: np.ndarray = field(compare=False)
    digit_table: np.ndarray = field(compare=False)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={self.modulus})"

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def order(self) -> int:
        return self.q - 1

    @cached_property
    def _pw(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return self.from_digits((-self.digit_table.astype(np.int64)) % self.p)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def same_field(self, other: "FieldCtx") -> bool:
        return self.p == other.p and self.m == other.m and self.modulus == other.modulus

    # -- conversions
    def from_digits(self, d) -> np.ndarray:
        return np.asarray(d, dtype=np.int64) @ self._pw

    def digits(self, x) -> np.ndarray:
        return self.digit_table[np.asarray(x, dtype=np.int64)]

    def from_int(self, c: int) -> int:
        """Image of the integer c under Z -> F_p -> F_q."""
        return c % self.p

    # -- arithmetic
    def add(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        d = self.digit_table[x].astype(np.int64) + self.digit_table[y]
        return self.from_digits(d % self.p)

    def neg(self, x):
        return self._neg_table[np.asarray(x, dtype=np.int64)]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        prod = self.exp_table[self.log_table[x] + self.log_table[y]]
        return np.where((x == 0) | (y == 0), 0, prod)

    def inv(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.exp_table[(self.order - self.log_table[x]) % self.order]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, n: int):
        """x**n for n >= 0 with 0**0 = 1."""
        x = np.asarray(x, dtype=np.int64)
        if n < 0:
            return self.pow(self.inv(x), -n)
        if n == 0:
            return np.ones_like(x)
        r = self.exp_table[(self.log_table[x] * (n % self.order)) % self.order]
        return np.where(x == 0, 0, r)

    def pow_many(self, x, exps):
        """Outer power table: result[..., j] = x**exps[j] (0**0 = 1)."""
        x = np.asarray(x, dtype=np.int64)[..., None]
        exps = np.asarray([int(t) for t in exps], dtype=object)
        zero_exp = np.array([t == 0 for t in exps])
        red = np.array([int(t) % self.order for t in exps], dtype=np.int64)
        r = self.exp_table[(self.log_table[x] * red) % self.order]
        r = np.where(x == 0, 0, r)
        return np.where(zero_exp, 1, r)

    def frob(self, x, e: int):
        """sigma^e(x) = x**(p**e), e taken mod m."""
        return self.pow(x, self.p ** (e % self.m))

    def sum(self, x, axis=None):
        x = np.asarray(x, dtype=np.int64)
        if axis is None:
            x = x.reshape(-1)
            axis = 0
        axis %= x.ndim
        if self.p == 2:
            if x.shape[axis] == 0:
                return np.zeros(np.delete(x.shape, axis), dtype=np.int64)
            return np.bitwise_xor.reduce(x, axis=axis)
        d = self.digit_table[x].sum(axis=axis, dtype=np.int64)
        return self.from_digits(d % self.p)

    def dot(self, x, y):
        return int(self.sum(self.mul(x, y)))

    def matmul(self, a, b, chunk: int = 1 << 22):
        """Matrix product over the field."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r, n = a.shape
        n2, c = b.shape
        if n != n2:
            raise ValueError("inner dimensions differ")
        out = np.zeros((r, c), dtype=np.int64)
        if n == 0:
            return out
        step = max(1, chunk // max(1, n * c))
        for i in range(0, r, step):
            blk = self.mul(a[i:i + step, :, None], b[None, :, :])
            out[i:i + step] = self.sum(blk, axis=1)
        return out

    def is_primitive(self, x: int) -> bool:
        if x == 0:
            return False
        lg = int(self.log_table[x])
        return math.gcd(lg, self.order) == 1

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of zero")
        return int(self.log_table[x])

    def power_of_w(self, i: int) -> int:
        return int(self.exp_table[i % self.order])

    def element_str(self, x: int) -> str:
        if x == 0:
            return "0"
        return f"w^{self.log(x)}"


def field_create(p: int, m: int, modulus=None, limit: int | None = None) -> FieldCtx:
    """Build F_{p^m}.

    Without ``modulus`` the lexicographically least monic irreducible
    polynomial with a primitive root is used and w is that root.  With an
    explicit modulus, w is the least-encoded primitive element.
    """
    if not is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**m
    limit = table_limit() if limit is None else limit
    if q > limit:
        raise DegreeTooLarge(f"field of order {q} exceeds table limit {limit}")

    if modulus is None:
        f = list(least_primitive_modulus(p, m))
    else:
        f = [int(c) % p for c in modulus]
        f = _trim(f)
        if len(f) != m + 1 or f[-1] != 1:
            raise NotIrreducible(f"modulus must be monic of degree {m}")
        if not is_irreducible_fp(f, p):
            raise NotIrreducible(f"modulus {f} is reducible over F_{p}")

    pw = [p**i for i in range(m)]

    def enc(poly):
        poly = list(poly) + [0] * (m - len(poly))
        return sum(c * w_ for c, w_ in zip(poly, pw))

    def dec(x):
        return _trim([(x // p**i) % p for i in range(m)])

    order = q - 1
    gen = [(-f[0]) % p] if m == 1 else [0, 1]
    if q > 2 and not _is_gen(gen, f, p, order):
        gen = None
        for x in range(2, q):
            g = dec(x)
            if _is_gen(g, f, p, order):
                gen = g
                break
        assert gen is not None

    exp_vals = np.zeros(max(order, 1), dtype=np.int64)
    cur = [1]
    for i in range(order):
        exp_vals[i] = enc(cur)
        cur = _pmulmod(cur, gen, f, p)
    if order == 1:
        exp_vals[0] = 1
    log_vals = np.zeros(q, dtype=np.int64)
    log_vals[exp_vals[:order]] = np.arange(order)
    if len(set(exp_vals[:order].tolist())) != order:
        raise NotIrreducible("generator does not have full order")
    exp_table = np.concatenate([exp_vals[:order], exp_vals[:order]])
    digit_table = np.array(
        [[(x // p**i) % p for i in range(m)] for x in range(q)], dtype=np.int16
    ).reshape(q, m)
    for arr in (exp_table, log_vals, digit_table):
        arr.setflags(write=False)
    return FieldCtx(p, m, tuple(f), int(exp_vals[1 % order]) if order > 1 else 1,
                    exp_table, log_vals, digit_table)


def _is_gen(g, f, p, order):
    if order == 1:
        return True
    if _ppowmod(g, order, f, p) != [1]:
        return False
    return all(_ppowmod(g, order // r, f, p) != [1] for r in prime_factors(order))


# -- Frobenius, H, roots, subfields ----------------------------------------

def frobenius_pow(ctx: FieldCtx, x, e: int):
    if e < 0:
        raise ValueError("e must be nonnegative")
    return ctx.frob(x, e)


def gcd_case(p: int, m: int, e: int) -> int:
    """1: m/s odd, p even; 2: m/s odd, p odd; 3: m/s even (s = gcd(e, m))."""
    s = math.gcd(e, m)
    if (m // s) % 2 == 0:
        return 3
    return 1 if p % 2 == 0 else 2


def gcd_by_case(p: int, m: int, e: int) -> int:
    """gcd(p^e + 1, p^m - 1) from the three-case classification."""
    case = gcd_case(p, m, e)
    if case == 1:
        return 1
    if case == 2:
        return 2
    return p ** math.gcd(e, m) + 1


@dataclass(frozen=True)
class SubgroupH:
    """The group of (p^e + 1)-th powers in F_q^*."""

    ctx: FieldCtx = field(repr=False)
    e: int
    s: int
    order: int
    generator: int

    @property
    def index(self) -> int:
        return self.ctx.order // self.order

    @property
    def case(self) -> int:
        return gcd_case(self.ctx.p, self.ctx.m, self.e)

    def contains(self, x):
        x = np.asarray(x, dtype=np.int64)
        return (x != 0) & (self.ctx.log_table[x] % self.index == 0)

    def elements(self) -> np.ndarray:
        return np.sort(self.ctx.exp_table[np.arange(0, self.ctx.order, self.index)])


def h_subgroup(ctx: FieldCtx, e: int) -> SubgroupH:
    if not 0 <= e < max(ctx.m, 1):
        raise ValueError(f"e must satisfy 0 <= e <= m-1, got {e}")
    g = math.gcd(ctx.p**e + 1, ctx.order)
    return SubgroupH(ctx, e, math.gcd(e, ctx.m), ctx.order // g,
                     int(ctx.pow(ctx.w, ctx.p**e + 1)))


def galois_root(ctx: FieldCtx, x, e: int):
    """Least-log v with v^(p^e + 1) = x.  Vectorized; raises NotInH."""
    arr = np.asarray(x, dtype=np.int64)
    if np.any(arr == 0):
        raise NotInH("zero has no root in F_q^*")
    order = ctx.order
    a = (ctx.p**e + 1) % order
    g = math.gcd(a, order)
    logs = ctx.log_table[arr]
    if np.any(logs % g):
        raise NotInH("element is not a (p^e+1)-th power")
    mod = order // g
    if mod == 1:
        y = np.zeros_like(logs)
    else:
        inv = pow(a // g, -1, mod)
        y = ((logs // g) % mod) * inv % mod
    out = ctx.exp_table[y]
    return int(out) if np.ndim(out) == 0 else out


def subfield_elements(ctx: FieldCtx, s: int) -> np.ndarray:
    if s < 1 or ctx.m % s:
        raise NotADivisor(f"{s} does not divide {ctx.m}")
    xs = ctx.elements
    return xs[ctx.frob(xs, s) == xs]


def affine_frobenius_set(ctx: FieldCtx, a: int, b: int, e: int) -> np.ndarray:
    """All x with x^(p^e) = a x + b, sorted."""
    if a == 0:
        raise ValueError("a must be nonzero")
    xs = ctx.elements
    rhs = ctx.add(ctx.mul(a, xs), b)
    return xs[ctx.frob(xs, e) == rhs]


def subfield_embedding(sub: FieldCtx, ctx: FieldCtx) -> np.ndarray:
    """Array mapping encodings of ``sub`` into ``ctx`` (a field hom).

    sub.w goes to the least-log root in ctx of sub's modulus."""
    if sub.p != ctx.p or ctx.m % sub.m:
        raise NotADivisor("not a subfield")
    xs = ctx.elements
    val = np.zeros_like(xs)
    for c in reversed(sub.modulus):
        val = ctx.add(ctx.mul(val, xs), c)
    roots = [int(r) for r in xs[(val == 0) & (xs != 0)]]
    beta = min(roots, key=ctx.log)
    mp = np.zeros(sub.q, dtype=np.int64)
    mp[sub.exp_table[:sub.order]] = ctx.pow_many(beta, range(sub.order))
    return mp
