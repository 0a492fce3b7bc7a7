import random

import pytest
from hypothesis import given, strategies as st

from curvesing.errors import NotAPthPower
from curvesing.fields import (
    FieldDesc,
    FieldElem,
    adjoin_pth_root,
    field_arith,
    frobenius,
    function_field,
    gf,
    make_field,
    pth_root,
)
from curvesing.poly import factor_univariate, parse_const, parse_poly


def E(K, text):
    return FieldElem(K, parse_const(text, K))


def test_examples_arith():
    K = gf(3)
    assert field_arith(E(K, "2"), E(K, "2"), "add") == E(K, "1")
    F = function_field(5)
    t = E(F, "t")
    assert field_arith(t, field_arith(E(F, "1"), t, "div"), "mul") == 1
    L = gf(3, 2, modulus=(1, 0, 1))
    x = E(L, "a")
    assert x * x == E(L, "2")
    with pytest.raises(ZeroDivisionError):
        field_arith(E(K, "1"), E(K, "0"), "div")


def test_examples_frobenius():
    K = gf(3)
    assert frobenius(E(K, "2")) == E(K, "2")
    F = function_field(3)
    assert pth_root(E(F, "t^3")) == E(F, "t")
    with pytest.raises(NotAPthPower) as ei:
        pth_root(E(F, "t"))
    assert ei.value.needed_depth == 1


def test_examples_adjoin():
    d0 = FieldDesc(3, transcendental="t")
    d1, emb = adjoin_pth_root(d0)
    assert d1.root_depth == 1
    F0, F1 = make_field(d0), make_field(d1)
    s = FieldElem(F1, F1.gen_power(1))
    assert emb(E(F0, "t")) == s ** 3
    d2, emb2 = adjoin_pth_root(d1)
    F2 = make_field(d2)
    assert emb2(emb(E(F0, "t"))) == FieldElem(F2, F2.gen_power(1)) ** 9
    assert emb(E(F0, "2")) == E(F1, "2")


def _sorted_factors(text, p):
    K = gf(p)
    return [(str(g), m) for g, m in factor_univariate(parse_poly(text, K, ("x",)))]


def test_examples_factor():
    assert _sorted_factors("x^2-1", 5) == [("x+4", 1), ("x+1", 1)]
    assert _sorted_factors("x^2+1", 3) == [("x^2+1", 1)]
    assert sorted(_sorted_factors("x^3-x", 3)) == [("x", 1), ("x+1", 1), ("x+2", 1)]


FIELD_CLASSES = [gf(7), gf(2, 3), gf(3, 2), function_field(3), function_field(2, "t", 1)]


@pytest.mark.parametrize("K", FIELD_CLASSES, ids=lambda K: str(K.desc))
def test_axioms(K):
    rng = random.Random(str(K.desc))
    for _ in range(1000 if K.is_finite else 200):
        a, b, c = (K.random(rng) for _ in range(3))
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.add(a, K.neg(a)) == K.zero
        if a != K.zero:
            assert K.mul(a, K.inv(a)) == K.one


@given(st.sampled_from(FIELD_CLASSES), st.integers(0, 2**31))
def test_frobenius_homomorphism(K, seed):
    rng = random.Random(seed)
    a, b = K.random(rng), K.random(rng)
    assert K.frobenius(K.mul(a, b)) == K.mul(K.frobenius(a), K.frobenius(b))
    assert K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b))
    assert K.pth_root(K.frobenius(a)) == a


@given(st.sampled_from([2, 3, 5]), st.integers(0, 2), st.integers(0, 2**31))
def test_embedding_lands_in_pth_powers(p, depth, seed):
    d = FieldDesc(p, transcendental="t", root_depth=depth)
    F = make_field(d)
    _, emb = adjoin_pth_root(d)
    a = FieldElem(F, F.random(random.Random(seed)))
    b = emb(a)
    r = pth_root(b)
    assert r ** p == b


@given(st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]), st.integers(0, 2**31))
def test_factor_reproduces_input(pk, seed):
    from curvesing import upoly

    K = gf(*pk)
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    a = [K.random(rng) for _ in range(n)] + [K.one]
    g = parse_poly("x", K, ("x",)).__class__.from_univariate(K, ("x",), a, "x")
    prod = g.__class__.const(K, ("x",), K.one)
    for h, m in factor_univariate(g):
        assert upoly.is_irreducible(K, list(h.univariate("x")))
        prod = prod * h ** m
    assert prod == g
