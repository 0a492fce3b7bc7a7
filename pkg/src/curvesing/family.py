"""Semicontinuity scans over one-parameter families of plane curves.

A family is f(S, T, u) over a finite field K.  Each sampled fiber u = a
gets the total of an invariant over all its singular closed points
(degree-weighted); the generic fiber is the same curve over K(u).
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import CurvesingError, ExtensionRequired, NonReduced
from .fields import Field, FieldDesc, function_field, make_field
from .invariants import delta_blowup, jacobian_number
from .jets import DEFAULT_NMAX, INFINITE
from .points import singular_points, singular_points_with_tower
from .poly import Poly, is_geometrically_reduced

log = logging.getLogger(__name__)

INVARIANTS = ("jac", "delta")


@dataclass
class FamilySpec:
    field: Field
    f: Poly  # variables (S, T, u)
    special: object  # raw element of field
    samples: list | None = None  # raw elements; None = every element of the field
    bound: int | None = None
    param: str = "u"

    def __post_init__(self):
        if not self.field.is_finite:
            raise ValueError("family coefficients must lie in a finite field")
        if len(self.f.vars) != 3 or self.f.vars[2] != self.param:
            raise ValueError("family polynomial needs variables (S, T, param)")

    def sample_values(self):
        if self.samples is None:
            return list(self.field.elements())
        return list(self.samples)


@dataclass
class FiberResult:
    value: object
    total: int | float | None
    max_point: int | float | None
    points: int = 0
    skipped: str | None = None


@dataclass
class SemicontinuityRecord:
    invariant: str
    samples: list  # FiberResult, in sample order
    special: FiberResult
    generic_total: int | float | None
    generic_field: str | None
    bound: int | float | None
    verdict: bool
    partial: bool = False
    stable_ok: bool = True
    warnings: list = dc_field(default_factory=list)

    def to_json(self, field: Field):
        def num(v):
            return "inf" if v == INFINITE else v

        return {
            "invariant": self.invariant,
            "special": {"u": field.to_str(self.special.value), "total": num(self.special.total),
                        "max_point": num(self.special.max_point)},
            "generic_total": num(self.generic_total),
            "generic_field": self.generic_field,
            "bound": num(self.bound),
            "samples": [
                {"u": field.to_str(s.value), "total": num(s.total), "max_point": num(s.max_point),
                 **({"skipped": s.skipped} if s.skipped else {})}
                for s in self.samples
            ],
            "verdict": self.verdict,
            "partial": self.partial,
            "stable_ok": self.stable_ok,
            "warnings": list(self.warnings),
        }


def fiber(spec: FamilySpec, a) -> Poly:
    f = spec.f
    F = spec.field
    out: dict = {}
    for (i, j, k), c in f.terms.items():
        v = F.mul(c, F.pow(a, k))
        out[(i, j)] = F.add(out.get((i, j), F.zero), v)
    return Poly(F, f.vars[:2], {e: c for e, c in out.items() if c != F.zero})


def generic_fiber(spec: FamilySpec) -> Poly:
    """f over K(u) in the variables S, T."""
    K = spec.field
    L = function_field(K.p, spec.param, 0, K.degree_over_prime)
    out: dict = {}
    for (i, j, k), c in spec.f.terms.items():
        v = L.mul(L.from_base(c), L.transcendental_power(k))
        out[(i, j)] = L.add(out.get((i, j), L.zero), v)
    return Poly(L, spec.f.vars[:2], {e: c for e, c in out.items() if c != L.zero})


def _point_value(germ: Poly, invariant: str, nmax: int, seed: int):
    if invariant == "jac":
        return jacobian_number(germ, nmax)
    return delta_blowup(germ, seed)[0]


def curve_total(f: Poly, invariant: str, nmax: int = DEFAULT_NMAX, seed: int = 0,
                max_depth: int = 0):
    """(total over singular closed points, max per geometric point, number of closed points)."""
    if f.is_zero():
        raise NonReduced("zero fiber")
    if f.field.is_finite:
        locus = singular_points(f, seed)
    else:
        locus, _ = singular_points_with_tower(f, max_depth, seed)
    if locus.non_isolated is not None:
        if invariant == "jac":
            return INFINITE, INFINITE, 0
        raise NonReduced("fiber has a positive-dimensional singular locus", witness=locus.non_isolated)
    total = 0
    best = 0
    for pt in locus.points:
        v = _point_value(pt.translate(f), invariant, nmax, seed)
        total += v * pt.geometric_points
        best = max(best, v)
    return total, best, len(locus.points)


def _scan_one(spec, a, invariant, nmax, seed):
    g = fiber(spec, a)
    if g.is_zero() or g.is_constant():
        return FiberResult(a, None, None, skipped="fiber is empty or the whole plane")
    red = is_geometrically_reduced(g)
    if not red:
        return FiberResult(a, None, None, skipped=f"fiber not geometrically reduced ({red.status})")
    try:
        total, best, n = curve_total(g, invariant, nmax, seed)
    except CurvesingError as exc:
        return FiberResult(a, None, None, skipped=f"{type(exc).__name__}: {exc}")
    return FiberResult(a, total, best, n)


def semicontinuity_scan(spec: FamilySpec, invariant: str = "jac", nmax: int = DEFAULT_NMAX,
                        max_depth: int = 1, seed: int = 0, workers: int = 4) -> SemicontinuityRecord:
    """Compare the generic fiber with the special fiber and the sampled fibers.

    verdict = (generic total <= special total) and, on the samples that
    attain the generic total (u0 excluded), the largest per-point value is
    at most the bound N (given, or the special fiber's largest).
    """
    if invariant not in INVARIANTS:
        raise ValueError(f"invariant must be one of {INVARIANTS}")
    K = spec.field
    values = spec.sample_values()
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(lambda a: _scan_one(spec, a, invariant, nmax, seed), values))
    special = next((r for r in results if r.value == spec.special), None)
    if special is None:
        special = _scan_one(spec, spec.special, invariant, nmax, seed)
    warnings = [f"u = {K.to_str(r.value)} skipped: {r.skipped}" for r in results if r.skipped]
    for w in warnings:
        log.warning(w)
    if special.total is None:
        raise NonReduced(f"special fiber unusable: {special.skipped}")

    partial = False
    generic_total = None
    generic_field = None
    try:
        gf_ = generic_fiber(spec)
        generic_total, _, _ = curve_total(gf_, invariant, nmax, seed, max_depth)
        generic_field = str(gf_.field.desc)
    except ExtensionRequired as exc:
        partial = True
        warnings.append(f"generic fiber needs an extension: {exc}")
    except CurvesingError as exc:
        partial = True
        warnings.append(f"generic fiber failed: {type(exc).__name__}: {exc}")

    N = spec.bound if spec.bound is not None else special.max_point
    stable = [r for r in results
              if r.total is not None and r.value != spec.special
              and (generic_total is None or r.total == generic_total)]
    stable_ok = all(r.max_point <= N for r in stable)
    main_ok = generic_total is None or generic_total <= special.total
    return SemicontinuityRecord(
        invariant=invariant, samples=results, special=special, generic_total=generic_total,
        generic_field=generic_field, bound=N, verdict=bool(main_ok and stable_ok), partial=partial,
        stable_ok=stable_ok, warnings=warnings)


def family_from_desc(desc: FieldDesc, text: str, special: str, samples="all", param: str = "u",
                     vars=("S", "T"), bound: int | None = None) -> FamilySpec:
    from .poly import parse_const, parse_poly

    K = make_field(desc)
    f = parse_poly(text, K, tuple(vars) + (param,))
    sp = parse_const(special, K)
    smp = None if samples == "all" else [parse_const(s, K) for s in samples]
    return FamilySpec(K, f, sp, smp, bound, param)
