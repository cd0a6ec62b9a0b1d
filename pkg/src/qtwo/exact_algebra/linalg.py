"""Linear algebra over F_3 and over the graded field F_3[q4^{+-1}].

A nonzero homogeneous element of F_3[q4^{+-1}] is c*q4^k, always a unit,
so a homogeneous row can be rescaled to have q4-free entries in a fixed
residue class of weight.  Rank over the graded field is then an F_3 rank.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .. import kernels
from ..errors import PreconditionError
from .poly import Poly

Q4_WEIGHT = 4


def _entry_data(p: Poly):
    """(F_3 value, q4 exponent) of a homogeneous entry; None for 0."""
    if p.is_zero():
        return None
    if len(p.terms) != 1:
        raise PreconditionError(f"entry {p} is not homogeneous in F_3[q4^+-1]")
    (e, c), = p.terms.items()
    names = p.ring.names
    for n, k in zip(names, e):
        if k and n != "q4":
            raise PreconditionError(f"entry {p} involves {n}; only q4 is allowed")
    k = e[names.index("q4")] if "q4" in names else 0
    m = p.ring.domain.modulus
    if m and m % 3:
        raise PreconditionError("coefficients must live in characteristic 3")
    return int(p.ring.domain.convert(c) if not m else c) % 3, k


def row_weight(row: Sequence[Poly], col_weights=None) -> int | None:
    """Weight of a homogeneous row, None for the zero row."""
    col_weights = col_weights or [0] * len(row)
    w = None
    for p, cw in zip(row, col_weights):
        d = _entry_data(p)
        if d is None:
            continue
        ew = Q4_WEIGHT * d[1] - cw
        if w is None:
            w = ew
        elif w != ew:
            raise PreconditionError("row is not homogeneous")
    return w


def dehomogenize(rows, col_weights=None) -> np.ndarray:
    """F_3 matrix obtained by setting q4 = 1 in homogeneous rows."""
    rows = list(rows)
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    ncols = len(rows[0])
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise PreconditionError("rows have different lengths")
        row_weight(row, col_weights)
        for j, p in enumerate(row):
            d = _entry_data(p)
            if d is not None:
                out[i, j] = d[0]
    return out


def graded_rank(rows, weight: int | None = None, col_weights=None) -> int:
    """Rank of the span of homogeneous rows in the given weight component.

    Multiplication by q4 moves weight by 4, so the weight-w component sees
    exactly the rows whose weight is congruent to w mod 4.  With
    ``weight=None`` every row counts.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    keep = []
    for r in rows:
        w = row_weight(r, col_weights)
        if w is None:
            continue
        if weight is None or (w - weight) % Q4_WEIGHT == 0:
            keep.append(r)
    if not keep:
        return 0
    return kernels.rank_mod_p(dehomogenize(keep, col_weights), 3)


def rank_f3(a) -> int:
    return kernels.rank_mod_p(np.asarray(a, dtype=np.int64), 3)


def nullspace_f3(a) -> np.ndarray:
    return kernels.nullspace_mod_p(np.asarray(a, dtype=np.int64), 3)


def solve_f3(a, b):
    """Some x with a @ x = b over F_3, or None."""
    a = np.asarray(a, dtype=np.int64) % 3
    b = np.asarray(b, dtype=np.int64).reshape(-1) % 3
    rows, cols = a.shape
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, piv = kernels.rref_mod_p(aug, 3)
    piv = list(piv)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return x
