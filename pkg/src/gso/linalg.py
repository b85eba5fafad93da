"""Dense linear algebra over a FieldCtx.

Vectors and matrices are plain int64 numpy arrays of element encodings;
the field travels alongside as an explicit argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gso.gf import FieldCtx


class LengthMismatch(ValueError):
    pass


class ColsMismatch(ValueError):
    pass


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 1:
        M = M[None, :]
    return M


def schur(ctx: FieldCtx, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape:
        raise LengthMismatch(f"lengths {x.shape} and {y.shape}")
    return ctx.mul(x, y)


def galois_inner(ctx: FieldCtx, x, y, e: int) -> int:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape:
        raise LengthMismatch(f"lengths {x.shape} and {y.shape}")
    return ctx.dot(x, ctx.frob(y, e))


@dataclass(frozen=True)
class RrefResult:
    rref: np.ndarray
    rank: int
    pivots: tuple[int, ...]
    nullspace: np.ndarray  # rows form a basis of {x : M x^T = 0}


def _eliminate(ctx: FieldCtx, M: np.ndarray, stop_cols: int | None = None):
    """In-place Gauss-Jordan on a copy; returns (R, pivot columns)."""
    R = M.copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    ncols = cols if stop_cols is None else stop_cols
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = ctx.mul(R[r], int(ctx.inv(R[r, c])))
        f = R[:, c].copy()
        f[r] = 0
        hit = np.nonzero(f)[0]
        if len(hit):
            R[hit] = ctx.sub(R[hit], ctx.mul(f[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rref_kernel(ctx: FieldCtx, M) -> RrefResult:
    M = as_matrix(M)
    rows, cols = M.shape
    R, pivots = _eliminate(ctx, M)
    rank = len(pivots)
    free = [c for c in range(cols) if c not in set(pivots)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for t, fcol in enumerate(free):
        N[t, fcol] = 1
        for i, pc in enumerate(pivots):
            N[t, pc] = int(ctx.neg(R[i, fcol]))
    R = R[:rank] if rank else np.zeros((0, cols), dtype=np.int64)
    return RrefResult(R, rank, tuple(pivots), N)


def rank(ctx: FieldCtx, M) -> int:
    M = as_matrix(M)
    if not np.any(M):
        return 0
    return len(_eliminate(ctx, M)[1])


def nullspace(ctx: FieldCtx, M) -> np.ndarray:
    return rref_kernel(ctx, M).nullspace


def solve_affine(ctx: FieldCtx, M, b):
    """One solution of M x^T = b^T with every free variable zero, or None."""
    M = as_matrix(M)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.shape[0] != M.shape[0]:
        raise LengthMismatch("rhs length differs from row count")
    aug = np.concatenate([M, b[:, None]], axis=1)
    R, pivots = _eliminate(ctx, aug, stop_cols=M.shape[1])
    rank_ = len(pivots)
    if np.any(R[rank_:, -1]):
        return None
    x = np.zeros(M.shape[1], dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, -1]
    return x


def row_space_equal(ctx: FieldCtx, G1, G2) -> bool:
    G1, G2 = as_matrix(G1), as_matrix(G2)
    if G1.shape[1] != G2.shape[1]:
        raise ColsMismatch("column counts differ")
    R1, R2 = rref_kernel(ctx, G1).rref, rref_kernel(ctx, G2).rref
    return R1.shape == R2.shape and bool(np.array_equal(R1, R2))


def subspace_intersection_dim(ctx: FieldCtx, A, B) -> int:
    """dim(rowspace A ∩ rowspace B) = rk A + rk B - rk [A; B]."""
    A, B = as_matrix(A), as_matrix(B)
    return rank(ctx, A) + rank(ctx, B) - rank(ctx, np.concatenate([A, B]))
