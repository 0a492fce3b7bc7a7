import random

import pytest
from hypothesis import given, strategies as st

from _gen import germs, random_poly
from curvesing.errors import ExtensionRequired, ParseError
from curvesing.fields import function_field, gf
from curvesing.points import PointSpec, locate_with_tower, translate_to_origin
from curvesing.poly import (
    Poly,
    derivative,
    gcd_bivariate,
    is_geometrically_reduced,
    multiplicity,
    parse_poly,
    unparse,
)
from curvesing.invariants import jacobian_number, delta_blowup

ST = ("S", "T")


def P(text, K, vars=ST):
    return parse_poly(text, K, vars)


def test_parse_examples():
    K = gf(3)
    f = P("S^2+T^3", K)
    assert f.terms == {(2, 0): 1, (0, 3): 1}
    F = function_field(3)
    g = P("Y^2-X^3-t", F, ("X", "Y"))
    assert len(g.terms) == 3 and g.terms[(0, 0)] == F.neg(F.gen_power(1))
    assert P("3*S", K).is_zero()


@pytest.mark.parametrize("text,msg", [("S+", "position"), ("S/T", "divi"), ("S+Q", "unknown")])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        P(text, gf(5))


def test_derivative_examples():
    for p in (2, 3, 5, 7):
        assert derivative(P(f"X^{p}", gf(p), ("X",)), "X").is_zero()
    assert derivative(P("S^2+T^3", gf(5)), "T") == P("3*T^2", gf(5))
    F = function_field(3)
    assert derivative(P("Y^2-X^3-t", F, ("X", "Y")), "Y") == P("2*Y", F, ("X", "Y"))


def test_translate_examples():
    K = gf(3)
    g, desc = translate_to_origin(P("T-1", K), PointSpec.rational(["0", "1"]))
    assert g == P("T", K) and desc == K.desc
    F = function_field(3)
    f = P("Y^2-X^3-t", F, ("X", "Y"))
    with pytest.raises(ExtensionRequired) as ei:
        translate_to_origin(f, PointSpec.from_ideal(["Y", "X^3+t"]))
    assert ei.value.depth == 1
    loc, emb, extra = locate_with_tower(f, PointSpec.from_ideal(["Y", "X^3+t"]), 1)
    assert extra == 1
    g = loc.translate(f)
    # Y^2 - X^3 - t with X -> X - t^(1/3) is Y^2 - X^3
    assert g == P("Y^2-X^3", loc.field, ("X", "Y"))


def test_gcd_examples():
    K = gf(5)
    assert gcd_bivariate(P("S*T", K), P("S*(S+T)", K)) == P("S", K)
    assert gcd_bivariate(P("S^2+T^3", K), P("2*T^2", K)).is_constant()
    assert gcd_bivariate(P("(S+T)^2", K), P("(S+T)*S", K)) == P("S+T", K)


def test_reduced_examples():
    for p in (2, 3, 5, 7):
        assert is_geometrically_reduced(P("S^2+T^3", gf(p)))
    assert is_geometrically_reduced(P("(S+T)^2", gf(3))).status == "no"
    r = is_geometrically_reduced(P("S^3+t*T^3", function_field(3)))
    assert (r.status, r.depth) == ("needs_extension", 1)
    assert is_geometrically_reduced(P("S^3+t*T^3", function_field(3, "t", 1))).status == "no"


def test_multiplicity_examples():
    K = gf(5)
    assert [multiplicity(P(s, K)) for s in ("S*T", "S^2+T^3", "S*T*(S+T)")] == [2, 2, 3]


@given(germs(maxdeg=5))
def test_round_trip(f):
    text = unparse(f)
    g = parse_poly(text, f.field, f.vars)
    assert g == f and unparse(g) == text


def test_leibniz_500():
    rng = random.Random(500)
    for i in range(500):
        K = gf(*[(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)][i % 5])
        f = random_poly(rng, K, ST, 4, 0)
        g = random_poly(rng, K, ST, 4, 0)
        c = K.random(rng)
        for v in ST:
            assert derivative(f * g, v) == derivative(f, v) * g + f * derivative(g, v)
            assert derivative(f + g.scale(c), v) == derivative(f, v) + derivative(g, v).scale(c)


@given(st.sampled_from([(2, 1), (3, 1), (5, 1), (3, 2)]), st.integers(0, 2**31))
def test_gcd_divides(pk, seed):
    rng = random.Random(seed)
    K = gf(*pk)
    f = random_poly(rng, K, ST, 3, 0)
    g = random_poly(rng, K, ST, 3, 0)
    h = random_poly(rng, K, ST, 2, 1)
    a, b = f * h, g * h
    if a.is_zero() or b.is_zero():
        return
    d = gcd_bivariate(a, b)
    for x in (a, b):
        assert x.exact_div(d) * d == x
    assert d.exact_div(h) * h == d  # the common factor survives


@given(germs(maxdeg=3))
def test_square_not_reduced(f):
    if f.is_constant():
        return
    assert is_geometrically_reduced(f * f).status == "no"


@given(st.integers(0, 2**31))
def test_translation_preserves_multiplicity_and_invariants(seed):
    rng = random.Random(seed)
    K = gf(rng.choice((3, 5, 7)))
    g = random_poly(rng, K, ST, 4, 2, 0.6)
    if g.is_zero() or not is_geometrically_reduced(g, local=True):
        return
    a, b = K.random(rng), K.random(rng)
    moved = g.translate((K.neg(a), K.neg(b)))  # the same germ placed at (a, b)
    back, _ = translate_to_origin(moved, PointSpec.rational([K.to_str(a), K.to_str(b)]))
    assert back == g
    assert multiplicity(back) == multiplicity(g)
    assert jacobian_number(back) == jacobian_number(g)
    assert delta_blowup(back)[0] == delta_blowup(g)[0]
