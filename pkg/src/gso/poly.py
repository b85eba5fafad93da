"""Univariate polynomials over a FieldCtx as ascending coefficient tuples."""

from __future__ import annotations

import numpy as np

from gso.gf import FieldCtx


def trim(f) -> tuple[int, ...]:
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def deg(f) -> int:
    f = trim(f)
    return len(f) - 1  # -1 for the zero polynomial


def evaluate(ctx: FieldCtx, f, x):
    """Horner evaluation, vectorized over x."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in reversed(trim(f)):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def mul(ctx: FieldCtx, f, g) -> tuple[int, ...]:
    f, g = trim(f), trim(g)
    if not f or not g:
        return ()
    outer = ctx.mul(np.array(f)[:, None], np.array(g)[None, :])
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i in range(len(f)):
        out[i:i + len(g)] = ctx.add(out[i:i + len(g)], outer[i])
    return trim(out)


def power(ctx: FieldCtx, f, n: int) -> tuple[int, ...]:
    result = (1,)
    base = trim(f)
    while n:
        if n & 1:
            result = mul(ctx, result, base)
        n >>= 1
        if n:
            base = mul(ctx, base, base)
    return result


def monomial(d: int) -> tuple[int, ...]:
    return (0,) * d + (1,)


def has_root(ctx: FieldCtx, f) -> bool:
    return bool(np.any(evaluate(ctx, f, ctx.elements) == 0))
