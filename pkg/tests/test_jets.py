import random

import pytest
from hypothesis import given, strategies as st

from _gen import random_poly
from curvesing.errors import NotStabilized
from curvesing.fields import gf
from curvesing.jets import INFINITE, colength, local_dim_at_precision
from curvesing.poly import Poly, parse_poly

ST = ("S", "T")


def gens(K, *texts):
    return [parse_poly(t, K, ST) for t in texts]


def test_colength_examples():
    K = gf(5)
    assert colength(gens(K, "S", "T")).value == 1
    assert colength(gens(K, "S*T", "S^2", "T^2")).value == 3
    assert colength(gens(K, "S^2", "T^3")).value == 6
    r = colength(gens(K, "(S+T)^2", "(S+T)*S"))
    assert r.value == INFINITE and r.is_infinite
    assert r.witness == parse_poly("S+T", K, ST)
    assert colength(gens(K, "1+S", "T^5")).value == 0


def test_local_dim_examples():
    K = gf(3)
    assert local_dim_at_precision(gens(K, "S^2", "T^3"), 2) == 3
    for N in (1, 2, 5, 9):
        assert local_dim_at_precision(gens(K, "S", "T"), N) == 1
        assert local_dim_at_precision([], N, 2) == N * (N + 1) // 2


def test_not_stabilized_small_cutoff():
    K = gf(7)
    with pytest.raises(NotStabilized):
        colength(gens(K, "S^40", "T^40"), nmax=16)


def test_certified_value_is_stable():
    K = gf(5)
    g = gens(K, "S^2+T^3", "2*S", "3*T^2")
    r = colength(g)
    for N in range(r.certified_at, r.certified_at + 6):
        assert local_dim_at_precision(g, N) == r.value


@given(st.integers(0, 2**31))
def test_monotone_in_N(seed):
    rng = random.Random(seed)
    K = gf(rng.choice((2, 3, 5)))
    g = [random_poly(rng, K, ST, 4, 1) for _ in range(rng.randint(1, 3))]
    g = [x for x in g if not x.is_zero()]
    dims = [local_dim_at_precision(g, N, 2) for N in range(1, 14)]
    assert dims == sorted(dims)
    r = colength(g)
    if r.value != INFINITE:
        assert dims[-1] == r.value


def _staircase(rng):
    """Random monomial ideal with finite colength and its staircase count."""
    a, b = rng.randint(1, 9), rng.randint(1, 9)
    corners = [(a, 0), (0, b)] + [(rng.randint(0, a), rng.randint(0, b)) for _ in range(rng.randint(0, 4))]
    count = sum(1 for i in range(a) for j in range(b)
                if not any(i >= x and j >= y for x, y in corners))
    return corners, count


def test_staircase_300():
    rng = random.Random(300)
    for n in range(300):
        K = gf((2, 3, 5, 7)[n % 4])
        corners, want = _staircase(rng)
        g = [Poly(K, ST, {c: K.one}) for c in corners]
        assert colength(g).value == want, corners


@given(st.integers(0, 2**31))
def test_order_and_unit_invariance(seed):
    rng = random.Random(seed)
    K = gf(rng.choice((2, 3, 5, 7)))
    corners, want = _staircase(rng)
    g = []
    for c in corners:
        base = Poly(K, ST, {c: K.one}) + random_poly(rng, K, ST, sum(c) + 3, sum(c) + 1, 0.3)
        g.append(base)
    r = colength(g)
    rng.shuffle(g)
    unit = Poly.const(K, ST, rng.randrange(1, K.order)) + random_poly(rng, K, ST, 2, 1)
    g[0] = g[0] * unit
    assert colength(g).value == r.value


def test_infinite_detection_100():
    rng = random.Random(100)
    done = 0
    while done < 100:
        K = gf((2, 3, 5, 7)[done % 4])
        h = random_poly(rng, K, ST, 2, 1, 0.7)  # through the origin
        a = random_poly(rng, K, ST, 3, 0, 0.5)
        b = random_poly(rng, K, ST, 3, 0, 0.5)
        if h.is_zero() or a.is_zero() or b.is_zero():
            continue
        assert colength([h * a, h * b]).value == INFINITE
        # a unit common factor leaves the colength finite or infinite as for (a, b) alone
        u = h + Poly.const(K, ST, K.one)
        assert colength([u * a, u * b]).value == colength([a, b]).value
        done += 1
