import pytest

from curvesing.fields import FieldDesc, gf
from curvesing.family import curve_total, family_from_desc, fiber, generic_fiber, semicontinuity_scan
from curvesing.jets import INFINITE
from curvesing.poly import parse_poly


def _scan(text, p, k=1, invariant="jac", samples="all"):
    spec = family_from_desc(FieldDesc(p, k), text, "0", samples)
    return spec, semicontinuity_scan(spec, invariant)


def test_cusp_to_node_p5():
    spec, rec = _scan("T^2-S^3-u*S^2", 5)
    assert rec.special.total == 2 and rec.generic_total == 1
    assert [s.total for s in rec.samples] == [2, 1, 1, 1, 1]
    assert rec.verdict and rec.stable_ok and not rec.partial
    _, rec = _scan("T^2-S^3-u*S^2", 5, invariant="delta")
    assert [s.total for s in rec.samples] == [1] * 5 and rec.generic_total == 1


def test_nine_element_field_all_but_finitely_many():
    spec, rec = _scan("T^2-S^3-u*S^2", 3, 2)
    assert len(rec.samples) == 9
    off = [s for s in rec.samples if s.total != rec.generic_total]
    assert [s.value for s in off] == [spec.special]
    assert rec.generic_total <= rec.special.total


def test_constant_family():
    for inv in ("jac", "delta"):
        _, rec = _scan("T^2-S^3", 7, invariant=inv)
        assert len({s.total for s in rec.samples}) == 1
        assert rec.generic_total == rec.special.total and rec.verdict


def test_determinism():
    spec = family_from_desc(FieldDesc(5), "T^2-S^3-u*S^2+u^2*S*T", "0")
    a = semicontinuity_scan(spec, "jac", workers=1).to_json(spec.field)
    b = semicontinuity_scan(spec, "jac", workers=4).to_json(spec.field)
    assert a == b


def test_fiber_specialization():
    spec = family_from_desc(FieldDesc(5), "T^2-S^3-u*S^2", "0")
    K = spec.field
    assert fiber(spec, K.zero) == parse_poly("T^2-S^3", K, ("S", "T"))
    assert fiber(spec, K.one) == parse_poly("T^2-S^3-S^2", K, ("S", "T"))
    assert generic_fiber(spec).field.desc.transcendental == "u"


def test_curve_total_non_isolated():
    K = gf(5)
    assert curve_total(parse_poly("T^2", K, ("S", "T")), "jac")[0] == INFINITE


def test_bad_family_variables():
    with pytest.raises(Exception):
        family_from_desc(FieldDesc(5, transcendental="t"), "T^2-S^3-u", "0")
