"""Hot integer kernels: row reduction over F_p and cyclic convolution mod m.

Every kernel exists twice: a loop version compiled with numba (when
available) and a vectorised numpy version.  ``USE_NUMBA`` picks the
default; both paths are importable for testing and benchmarking.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

USE_NUMBA = HAVE_NUMBA


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


@njit(cache=True)
def _rref_loops(m, p, inv):
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        s = inv[m[r, c] % p]
        for j in range(cols):
            m[r, j] = (m[r, j] * s) % p
        for i in range(rows):
            if i != r:
                f = m[i, c] % p
                if f != 0:
                    for j in range(cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
    return pivots[:npiv]


def _rref_numpy(m: np.ndarray, p: int, inv: np.ndarray) -> np.ndarray:
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c] % p)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * inv[m[r, c] % p]) % p
        f = m[:, c].copy()
        f[r] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(f[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def rref_mod_p(a, p: int, use_numba: bool | None = None):
    """Reduced row echelon form of ``a`` over F_p.  Returns ``(R, pivot_columns)``."""
    m = np.array(a, dtype=np.int64, copy=True) % p
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    if m.size == 0:
        return m, np.zeros(0, dtype=np.int64)
    inv = _inverse_table(p)
    if USE_NUMBA if use_numba is None else use_numba:
        piv = _rref_loops(m, p, inv)
    else:
        piv = _rref_numpy(m, p, inv)
    return m, piv


def rank_mod_p(a, p: int, use_numba: bool | None = None) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p, use_numba)[1])


def nullspace_mod_p(a, p: int, use_numba: bool | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}`` over F_p, in echelon order of free columns."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_mod_p(a, p, use_numba)
    piv = list(piv)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-r[i, f]) % p
    return basis


@njit(cache=True)
def _cyclic_mul_loops(a, b, m):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        ai = a[i] % m
        if ai == 0:
            continue
        for j in range(n):
            k = i + j
            if k >= n:
                k -= n
            out[k] = (out[k] + ai * b[j]) % m
    return out


def _cyclic_mul_numpy(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in np.nonzero(a % m)[0]:
        out = (out + a[i] * np.roll(b, i)) % m
    return out


def cyclic_mul(a, b, m: int, use_numba: bool | None = None) -> np.ndarray:
    """Product in the group ring (Z/m)[Z/n] of coefficient vectors of length n."""
    a = np.asarray(a, dtype=np.int64) % m
    b = np.asarray(b, dtype=np.int64) % m
    if a.shape != b.shape:
        raise ValueError("group-ring operands must have equal length")
    if USE_NUMBA if use_numba is None else use_numba:
        return _cyclic_mul_loops(a, b, m)
    return _cyclic_mul_numpy(a, b, m)
