"""Random germs, coordinate changes and hypothesis strategies for the tests."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from curvesing.fields import gf
from curvesing.poly import Poly

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]


def random_poly(rng: random.Random, K, vars=("S", "T"), maxdeg=4, min_order=1, density=0.5):
    terms = {}
    for d in range(min_order, maxdeg + 1):
        for i in range(d + 1):
            if rng.random() < density:
                c = K.random(rng)
                if c != K.zero:
                    terms[(i, d - i)] = c
    return Poly(K, vars, terms)


def random_germ(rng, K, maxdeg=4, min_order=1, density=0.5):
    """Nonzero germ through the origin."""
    while True:
        f = random_poly(rng, K, ("S", "T"), maxdeg, min_order, density)
        if not f.is_zero():
            return f


def random_coordinate_change(rng, K, vars=("S", "T")):
    """(S, T) -> (aS+bT+q1, cS+dT+q2) with ad - bc != 0 and q_i quadratic."""
    while True:
        a, b, c, d = (K.random(rng) for _ in range(4))
        if K.sub(K.mul(a, d), K.mul(b, c)) != K.zero:
            break
    S, T = (Poly.var(K, vars, v) for v in vars)
    q1 = random_poly(rng, K, vars, 2, 2)
    q2 = random_poly(rng, K, vars, 2, 2)
    return {vars[0]: S.scale(a) + T.scale(b) + q1, vars[1]: S.scale(c) + T.scale(d) + q2}


@st.composite
def fields(draw, choices=SMALL_FIELDS):
    p, k = draw(st.sampled_from(choices))
    return gf(p, k)


@st.composite
def germs(draw, choices=SMALL_FIELDS, maxdeg=4, min_order=1):
    K = draw(fields(choices))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_germ(random.Random(seed), K, maxdeg, min_order)
