"""Rank of sparse row sets over the coefficient fields.

Finite fields go to a dense kernel (compiled when available); function
fields use sparse Gaussian elimination on dict rows.
"""
from __future__ import annotations

import os

import numpy as np

from .fields import GaloisField, PrimeField

if os.environ.get("CURVESING_PURE"):
    from . import _kernels_py as _kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:  # extension not built
        from . import _kernels_py as _kernels
        BACKEND = "python"


def rank(F, rows, ncols: int, kernels=None) -> int:
    """Rank of ``rows`` (iterables of (column, raw value)) over F."""
    k = kernels or _kernels
    if not rows or ncols == 0:
        return 0
    if isinstance(F, PrimeField):
        A = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, v in row:
                A[i, j] = v
        return int(k.rank_modp(A, F.p))
    if isinstance(F, GaloisField):
        q = F.order
        A = np.full((len(rows), ncols), q - 1, dtype=np.int32)
        log = F._log
        for i, row in enumerate(rows):
            for j, v in row:
                A[i, j] = log[v]
        return int(k.rank_zech(A, zech_table(F), q, F._neg_shift))
    return rank_generic(F, rows)


_zech_cache: dict = {}


def zech_table(F) -> np.ndarray:
    key = F.desc
    t = _zech_cache.get(key)
    if t is None:
        q = F.order
        t = np.array([q - 1 if z < 0 else z for z in F._zech], dtype=np.int32)
        _zech_cache[key] = t
    return t


def rank_generic(F, rows) -> int:
    """Sparse elimination with pivots on the smallest column index."""
    pivots: dict = {}
    z = F.zero
    r = 0
    for row in rows:
        cur = {j: v for j, v in row if v != z}
        while cur:
            j = min(cur)
            prow = pivots.get(j)
            if prow is None:
                inv = F.inv(cur[j])
                pivots[j] = {c: F.mul(v, inv) for c, v in cur.items()}
                r += 1
                break
            f = cur[j]
            for c, v in prow.items():
                nv = F.sub(cur.get(c, z), F.mul(f, v))
                if nv == z:
                    cur.pop(c, None)
                else:
                    cur[c] = nv
    return r
