# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled row-reduction kernels over F_p and over F_q in Zech-log form.

Both kernels reduce the matrix in place and return its rank.  Matrices are
C-contiguous; callers pass a copy they do not need afterwards.
"""
import numpy as np
from libc.stdint cimport int64_t, int32_t


cdef inline int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rank_modp(int64_t[:, ::1] A, int64_t p):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv, nnz
    cdef int64_t inv, f, tmp
    cdef int64_t[::1] cols = np.empty(n, dtype=np.int64)
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv_mod(A[r, c], p)
        nnz = 0
        for j in range(c, n):
            if A[r, j] != 0:
                A[r, j] = A[r, j] * inv % p
                cols[nnz] = j
                nnz += 1
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                f = p - f
                for k in range(nnz):
                    j = cols[k]
                    A[i, j] = (A[i, j] + f * A[r, j]) % p
        r += 1
    return r


def rank_zech(int32_t[:, ::1] A, int32_t[::1] zech, int32_t q, int32_t neg_shift):
    """Entries are discrete logs in [0, q-2]; the value q-1 encodes zero."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv, nnz
    cdef int32_t Z = q - 1, Q1 = q - 1
    cdef int32_t lp, le, x, y, z, tmp
    cdef int64_t[::1] cols = np.empty(n, dtype=np.int64)
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != Z:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        lp = A[r, c]
        nnz = 0
        for j in range(c, n):
            if A[r, j] != Z:
                A[r, j] = (A[r, j] - lp + Q1) % Q1
                cols[nnz] = j
                nnz += 1
        for i in range(r + 1, m):
            x = A[i, c]
            if x == Z:
                continue
            le = (x + neg_shift) % Q1
            for k in range(nnz):
                j = cols[k]
                y = (le + A[r, j]) % Q1
                x = A[i, j]
                if x == Z:
                    A[i, j] = y
                else:
                    z = zech[(y - x + Q1) % Q1]
                    if z == Z:
                        A[i, j] = Z
                    else:
                        A[i, j] = (x + z) % Q1
        r += 1
    return r
