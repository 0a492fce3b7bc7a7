import numpy as np
import pytest
from hypothesis import given, strategies as st

from curvesing import _kernels_py, _linalg
from curvesing.fields import gf

try:
    from curvesing import _kernels as compiled
except ImportError:  # pure install
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _random_rows(rng, F, m, n, density):
    rows = []
    for _ in range(m):
        rows.append([(j, int(rng.integers(1, F.order))) for j in range(n) if rng.random() < density])
    return rows


def _rank_reference(F, rows, n):
    """Plain Gaussian elimination on field elements."""
    M = [[F.zero] * n for _ in rows]
    for i, row in enumerate(rows):
        for j, v in row:
            M[i][j] = v
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != F.zero), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        for i in range(len(M)):
            if i != r and M[i][c] != F.zero:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[r])]
        r += 1
    return r


@given(st.sampled_from([(2, 1), (7, 1), (101, 1), (2, 3), (3, 2), (5, 2)]),
       st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**31), st.floats(0.1, 0.9))
def test_python_kernel_matches_reference(pk, m, n, seed, density):
    F = gf(*pk)
    rows = _random_rows(np.random.default_rng(seed), F, m, n, density)
    assert _linalg.rank(F, rows, n, _kernels_py) == _rank_reference(F, rows, n)


@needs_compiled
@given(st.sampled_from([(2, 1), (7, 1), (101, 1), (2, 3), (3, 2), (5, 2)]),
       st.integers(1, 30), st.integers(1, 30), st.integers(0, 2**31), st.floats(0.1, 0.9))
def test_compiled_matches_python(pk, m, n, seed, density):
    F = gf(*pk)
    rows = _random_rows(np.random.default_rng(seed), F, m, n, density)
    assert _linalg.rank(F, rows, n, compiled) == _linalg.rank(F, rows, n, _kernels_py)


def test_backend_name():
    assert _linalg.BACKEND in ("compiled", "python")
