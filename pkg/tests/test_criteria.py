import random

import pytest
from hypothesis import given, strategies as st

from _gen import random_germ
from curvesing.criteria import (
    INCONCLUSIVE,
    INDETERMINATE,
    SurfaceCurveSpec,
    adjunction_verdict,
    normalization_smoothness_verdict,
    rigidity_verdict,
    tate_smoothness_verdict,
)
from curvesing.errors import ExtensionRequired, ParityViolation
from curvesing.fields import gf
from curvesing.invariants import InvariantReport, germ_report
from curvesing.poly import is_geometrically_reduced, parse_poly
from curvesing.report import Report, emit_report

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def rep(text, p):
    return germ_report(parse_poly(text, gf(p), ("S", "T")))


def fake(jac, delta, m=2, tangents=None):
    return InvariantReport("x", m, jac, delta, tangents=tangents)


def test_adjunction_examples():
    v = adjunction_verdict(-2, 0, 11)
    assert v.satisfied and dict(v.data)["p_a"] == 0
    v = adjunction_verdict(0, 0, 3)
    assert v.status == INCONCLUSIVE and dict(v.data)["p_a"] == 1
    assert adjunction_verdict(0, 0, 7).satisfied
    with pytest.raises(ParityViolation):
        adjunction_verdict(1, 0, 7)
    with pytest.raises(ParityViolation):
        SurfaceCurveSpec(7, [], 1, 2)


def test_rigidity_includes_adjunction_when_given():
    vs = rigidity_verdict(SurfaceCurveSpec(11, [], -2, 0))
    assert [v.criterion for v in vs][-1] == "adjunction"
    assert all(v.satisfied for v in vs)


def test_normalization_examples():
    assert normalization_smoothness_verdict([("x", fake(2, 1))], 3).satisfied
    v = normalization_smoothness_verdict([("x", fake(3, 1))], 3)
    assert v.status == INCONCLUSIVE and any("optimal" in n for n in v.notes)
    assert normalization_smoothness_verdict([("x", fake(0, 0, 1)), ("y", fake(0, 0, 1))], 5).satisfied
    assert normalization_smoothness_verdict([("x", fake(1, 1))], 5, lci=False).status == INCONCLUSIVE


def test_tate_examples():
    assert tate_smoothness_verdict([0, 0], 3).satisfied
    assert tate_smoothness_verdict([1], 5).satisfied
    for p in (3, 5, 7):
        v = tate_smoothness_verdict([(p - 1) // 2], p)
        assert v.status == INCONCLUSIVE and v.notes


def test_errors_make_indeterminate():
    spec = SurfaceCurveSpec(5, [("a", rep("S*T", 5)), ("b", ExtensionRequired("x", depth=1))])
    vs = {v.criterion: v for v in rigidity_verdict(spec)}
    assert all(v.status == INDETERMINATE for v in vs.values())
    assert [e.passes for e in vs["jac-bound"].evidence] == [True, None]
    spec = SurfaceCurveSpec(5, [("a", rep("S*T*(S+T)", 5)), ("b", ExtensionRequired("x", depth=1))])
    assert rigidity_verdict(spec)[0].status == INCONCLUSIVE  # delta 3 fails; a known failure dominates


def test_empty_curve_satisfies_everything():
    assert all(v.satisfied for v in rigidity_verdict(SurfaceCurveSpec(7, [])))


def _random_spec(rng, p=None):
    p = p or rng.choice(PRIMES)
    K = gf(p)
    germs = []
    for i in range(rng.randint(0, 3)):
        while True:
            f = random_germ(rng, K, 4, rng.choice((1, 2, 2)), 0.5)
            if is_geometrically_reduced(f, local=True):
                break
        germs.append((f"x{i}", germ_report(f)))
    return SurfaceCurveSpec(p, germs)


def _structured(spec):
    return emit_report(Report("rigidity", verdicts=rigidity_verdict(spec)), "structured")


@given(st.integers(0, 2**31))
def test_purity(seed):
    a = _random_spec(random.Random(seed))
    b = _random_spec(random.Random(seed))
    assert _structured(a) == _structured(b)
    assert _structured(a) == _structured(a)


@given(st.integers(0, 2**31))
def test_consistency(seed):
    rng = random.Random(seed)
    spec = _random_spec(rng)
    vs = {v.criterion: v for v in rigidity_verdict(spec)}
    if vs["nodes"].satisfied:
        assert vs["jac-bound"].satisfied
    if vs["nodes-cusps"].satisfied:
        assert spec.p >= 5
    deltas = [r.delta for _, r in spec.germs]
    # choose intersection data with p_a >= every delta
    pa = max(deltas, default=0) + rng.randint(0, 3)
    s = 2 * (pa - 1)
    spec2 = SurfaceCurveSpec(spec.p, spec.germs, s, 0)
    vs2 = {v.criterion: v for v in rigidity_verdict(spec2)}
    if vs2["adjunction"].satisfied:
        assert vs2["delta-bound"].satisfied


@given(st.integers(0, 2**31))
def test_monotone_in_p(seed):
    rng = random.Random(seed)
    spec = _random_spec(rng)
    before = {v.criterion: v.satisfied for v in rigidity_verdict(spec)}
    for q in PRIMES:
        if q <= spec.p:
            continue
        after = {v.criterion: v.satisfied for v in rigidity_verdict(SurfaceCurveSpec(q, spec.germs))}
        for cid, ok in before.items():
            if ok:
                assert after[cid], (cid, spec.p, q)
    deltas = [r.delta for _, r in spec.germs]
    for q in PRIMES:
        if q > spec.p and tate_smoothness_verdict(deltas, spec.p).satisfied:
            assert tate_smoothness_verdict(deltas, q).satisfied


def test_consequence_mentions_rigidity_when_kodaira_asserted():
    spec = SurfaceCurveSpec(7, [("x", rep("S*T", 7))], kodaira_nonnegative=True)
    v = rigidity_verdict(spec)[0]
    assert v.satisfied and "rigid" in v.consequence
