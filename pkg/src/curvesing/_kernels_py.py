"""Pure-Python (numpy) twins of the compiled kernels in ``_kernels.pyx``.

Same signatures and the same in-place semantics; used when the extension
is not built or ``CURVESING_PURE=1`` is set.
"""
from __future__ import annotations

import numpy as np


def rank_modp(A: np.ndarray, p: int) -> int:
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            f = A[below, c]
            A[below] = (A[below] - np.outer(f, A[r])) % p
        r += 1
    return r


def rank_zech(A: np.ndarray, zech: np.ndarray, q: int, neg_shift: int) -> int:
    """Entries are discrete logs in [0, q-2]; the value q-1 encodes zero."""
    m, n = A.shape
    Z = Q1 = q - 1
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c] != Z)
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        row = A[r]
        live = row != Z
        row[live] = (row[live] - row[c]) % Q1
        cols = np.flatnonzero(live)
        below = r + 1 + np.flatnonzero(A[r + 1:, c] != Z)
        if below.size:
            le = (A[below, c].astype(np.int64) + neg_shift) % Q1
            y = (le[:, None] + row[cols][None, :]) % Q1
            x = A[np.ix_(below, cols)].astype(np.int64)
            xz = x == Z
            zz = zech[(y - x) % Q1]
            s = np.where(zz == Z, Z, (x + zz) % Q1)
            A[np.ix_(below, cols)] = np.where(xz, y, s)
        r += 1
    return r
