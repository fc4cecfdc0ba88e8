"""Multiprecision elimination on Hankel moment matrices, self-verified by a
second run at ``verify_factor`` times the working precision.

Two routes are kept deliberately distinct so they can cross-check each other:

* ``hankel_determinant`` uses partially pivoted LU, good for any nonsingular
  matrix and insensitive to pivot ordering;
* ``hankel_pivots`` uses unpivoted elimination, valid because the moment
  matrices of positive measures are positive definite, and returns the pivot
  sequence d_k = D_{k+1}/D_k of leading-principal-minor ratios.
"""

from __future__ import annotations

from typing import List, Sequence

from mpmath import mp

from .errors import PrecisionFailureError
from .model import PrecisionContext


def _hankel_matrix(moments: Sequence, n: int) -> List[List]:
    """n x n matrix with entry (i, k) = moments[i + k], rounded to ambient
    precision."""
    return [[+moments[i + k] for k in range(n)] for i in range(n)]


def _lu_det(a: List[List]):
    """Determinant by LU with partial pivoting, at ambient precision."""
    n = len(a)
    det = mp.mpf(1)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            return mp.mpf(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            row_r, row_c = a[r], a[col]
            for k in range(col + 1, n):
                row_r[k] -= f * row_c[k]
    return det


def _forward_pivots(a: List[List]) -> List:
    """Pivots of unpivoted Gaussian elimination, at ambient precision.

    Raises PrecisionFailureError on a non-positive pivot: the matrices fed in
    here are moment matrices of positive measures, whose true pivots are all
    positive, so a sign flip can only be numerical.
    """
    n = len(a)
    pivots = []
    for col in range(n):
        p = a[col][col]
        if not p > 0:
            raise PrecisionFailureError(
                f"non-positive pivot at index {col}; raise bits"
            )
        pivots.append(p)
        inv = 1 / p
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            row_r, row_c = a[r], a[col]
            for k in range(col + 1, n):
                row_r[k] -= f * row_c[k]
    return pivots


def _check_agreement(base, guard, ctx: PrecisionContext, what: str):
    tol = ctx.verify_tolerance()
    with mp.workprec(ctx.guard_bits):
        scale = abs(guard)
        if scale == 0 or abs(base - guard) > tol * scale:
            raise PrecisionFailureError(
                f"{what} failed verification at {ctx.bits} bits "
                f"(guard rerun at {ctx.guard_bits} bits disagrees); raise bits"
            )


def hankel_determinant(moments: Sequence, n: int, ctx: PrecisionContext):
    """Verified determinant of the n x n Hankel matrix of ``moments``.

    Computed once at ctx.bits (entries rounded to ctx.bits) and once at
    ctx.guard_bits; relative agreement within 2^(-bits/2) is required.
    Returns the guard-precision value.
    """
    if len(moments) < 2 * n - 1:
        raise ValueError(f"need moments up to order {2 * n - 2}, got {len(moments) - 1}")
    with mp.workprec(ctx.bits):
        base = _lu_det(_hankel_matrix(moments, n))
    with mp.workprec(ctx.guard_bits):
        guard = _lu_det(_hankel_matrix(moments, n))
    _check_agreement(base, guard, ctx, f"Hankel determinant (n={n})")
    return guard


def hankel_pivots(moments: Sequence, n: int, ctx: PrecisionContext):
    """Verified pivot sequence (leading-principal-minor ratios) of the n x n
    Hankel matrix of ``moments``.  Each pivot must be positive and agree
    between the base and guard runs to within 2^(-bits/2) relative."""
    if len(moments) < 2 * n - 1:
        raise ValueError(f"need moments up to order {2 * n - 2}, got {len(moments) - 1}")
    with mp.workprec(ctx.bits):
        base = _forward_pivots(_hankel_matrix(moments, n))
    with mp.workprec(ctx.guard_bits):
        guard = _forward_pivots(_hankel_matrix(moments, n))
    for k, (b, g) in enumerate(zip(base, guard)):
        _check_agreement(b, g, ctx, f"Hankel pivot h_{k}")
    return guard
