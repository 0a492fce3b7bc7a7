"""Verdicts for the numerical rigidity and smoothness criteria.

Every criterion here is sufficient, not necessary.  A failed condition
yields an *inconclusive* verdict, never a negative claim, and an input
whose invariants could not be computed yields *indeterminate*.

Criterion ids:

``delta-bound``          every delta < (p-1)/2
``jac-bound``            every jac < p
``nodes``                every singular point is a node
``nodes-cusps``          p >= 5 and every singular point is a node or an ordinary cusp
``adjunction``           C^2 + K.C < p - 3
``normalization-smooth`` lci and every jac < p, for curves over imperfect fields
``regular-smooth``       every geometric delta < (p-1)/2, for regular curves
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import ParityViolation
from .fields import is_prime
from .invariants import InvariantReport
from .jets import INFINITE

SATISFIED = "satisfied"
INCONCLUSIVE = "inconclusive"
INDETERMINATE = "indeterminate"

UNIRULED = ("if C moves in a positive-dimensional family, X is separably uniruled "
            "and has negative Kodaira dimension; equivalently, if kappa(X) >= 0 then C is rigid")
RIGID = "C is rigid (kappa(X) >= 0 was asserted)"
NORMALIZATION = "the normalization of C is smooth over k"
SMOOTH = "C is smooth over k"
NO_CONCLUSION = "no conclusion: the criterion is sufficient, not necessary"


@dataclass(frozen=True)
class Evidence:
    point: str
    value: object
    passes: bool | None  # None: value unavailable

    def to_json(self):
        v = "inf" if self.value == INFINITE else self.value
        return {"point": self.point, "value": v, "passes": self.passes}


@dataclass(frozen=True)
class Verdict:
    criterion: str
    status: str
    consequence: str
    evidence: tuple = ()
    notes: tuple = ()
    data: tuple = ()  # sorted (key, value) pairs of derived numbers

    @property
    def satisfied(self) -> bool:
        return self.status == SATISFIED

    def to_json(self):
        doc = {
            "criterion": self.criterion,
            "status": self.status,
            "satisfied": self.satisfied,
            "consequence": self.consequence,
            "evidence": [e.to_json() for e in self.evidence],
        }
        if self.notes:
            doc["notes"] = list(self.notes)
        if self.data:
            doc["data"] = dict(self.data)
        return doc


@dataclass
class SurfaceCurveSpec:
    """A curve C on a smooth surface X in characteristic p.

    ``germs`` holds (point id, InvariantReport) pairs, or (point id, error)
    when the invariants of that point could not be computed.
    """

    p: int
    germs: list = dc_field(default_factory=list)
    C2: int | None = None
    KC: int | None = None
    kodaira_nonnegative: bool | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if (self.C2 is None) != (self.KC is None):
            raise ValueError("intersection data needs both C2 and KC")
        if self.C2 is not None and (self.C2 + self.KC) % 2:
            raise ParityViolation(f"C^2 + K.C = {self.C2 + self.KC} is odd")


def _threshold_verdict(cid, items, value_of, bound, consequence, extra=None):
    """Shared shape: every available value must be < bound."""
    evidence = []
    unknown = False
    for pid, rep in items:
        if isinstance(rep, Exception):
            evidence.append(Evidence(pid, None, None))
            unknown = True
            continue
        v = value_of(rep)
        if v is None:
            evidence.append(Evidence(pid, None, None))
            unknown = True
        else:
            evidence.append(Evidence(pid, v, v < bound))
    if any(e.passes is False for e in evidence):
        status = INCONCLUSIVE
    elif unknown:
        status = INDETERMINATE
    else:
        status = SATISFIED
    return Verdict(cid, status, consequence if status == SATISFIED else NO_CONCLUSION,
                   tuple(evidence), tuple(extra or ()))


def _consequence(spec: SurfaceCurveSpec) -> str:
    return RIGID if spec.kodaira_nonnegative else UNIRULED


def _kind(rep: InvariantReport):
    if rep.jac == 0:
        return "smooth"
    if rep.is_node:
        return "node"
    if rep.delta is None or rep.tangents is None:
        return None
    if rep.is_cusp:
        return "cusp"
    return "other"


def _shape_verdict(cid, spec, allowed, gate=True, gate_note=None):
    evidence = []
    unknown = False
    for pid, rep in spec.germs:
        kind = None if isinstance(rep, Exception) else _kind(rep)
        if kind is None:
            unknown = True
            evidence.append(Evidence(pid, None, None))
        else:
            evidence.append(Evidence(pid, kind, kind in allowed))
    notes = ()
    if not gate:
        status = INCONCLUSIVE
        notes = (gate_note,)
    elif any(e.passes is False for e in evidence):
        status = INCONCLUSIVE
    elif unknown:
        status = INDETERMINATE
    else:
        status = SATISFIED
    cons = _consequence(spec) if status == SATISFIED else NO_CONCLUSION
    return Verdict(cid, status, cons, tuple(evidence), notes)


def rigidity_verdict(spec: SurfaceCurveSpec) -> list[Verdict]:
    p = spec.p
    cons = _consequence(spec)
    half = (p - 1) / 2
    out = [
        _threshold_verdict("delta-bound", spec.germs, lambda r: r.delta, half, cons),
        _threshold_verdict("jac-bound", spec.germs, lambda r: r.jac, p, cons),
        _shape_verdict("nodes", spec, {"smooth", "node"}),
        _shape_verdict("nodes-cusps", spec, {"smooth", "node", "cusp"}, gate=p >= 5,
                       gate_note=f"needs p >= 5 (p = {p})"),
    ]
    if spec.C2 is not None:
        out.append(adjunction_verdict(spec.C2, spec.KC, p, spec.kodaira_nonnegative))
    return out


def adjunction_verdict(C2: int, KC: int, p: int, kodaira_nonnegative: bool | None = None) -> Verdict:
    """C^2 + K.C < p - 3 bounds p_a below (p-1)/2, hence every delta."""
    s = C2 + KC
    if s % 2:
        raise ParityViolation(f"C^2 + K.C = {s} is odd")
    pa = s // 2 + 1
    ok = s < p - 3
    data = (("C2+KC", s), ("bound", p - 3), ("p_a", pa))
    notes = (f"delta(C,x) <= p_a = {pa} < (p-1)/2",) if ok else ()
    cons = (RIGID if kodaira_nonnegative else UNIRULED) if ok else NO_CONCLUSION
    ev = (Evidence("C", s, ok),)
    return Verdict("adjunction", SATISFIED if ok else INCONCLUSIVE, cons, ev, notes, data)


def normalization_smoothness_verdict(germs, p: int, lci: bool = True) -> Verdict:
    """Curve over a (possibly imperfect) field: lci with all jac < p => smooth normalization."""
    items = [(pid, r) for pid, r in germs]
    v = _threshold_verdict("normalization-smooth", items, lambda r: r.jac, p, NORMALIZATION)
    notes = list(v.notes)
    status = v.status
    if not lci:
        status = INCONCLUSIVE
        notes.append("curve not asserted to be a local complete intersection")
    if any(e.value == p for e in v.evidence):
        notes.append("bound is optimal: a point with jac = p occurs")
    return Verdict(v.criterion, status, NORMALIZATION if status == SATISFIED else NO_CONCLUSION,
                   v.evidence, tuple(notes))


def tate_smoothness_verdict(deltas, p: int) -> Verdict:
    """Regular curve with every geometric delta < (p-1)/2 is smooth.

    ``deltas`` is a list of (point id, geometric delta) pairs, or bare ints.
    """
    items = []
    for i, d in enumerate(deltas):
        pid, val = d if isinstance(d, tuple) else (f"x{i}", d)
        items.append((pid, val))
    half = (p - 1) / 2
    v = _threshold_verdict("regular-smooth", items, lambda d: d, half, SMOOTH)
    notes = ()
    if any(e.value is not None and 2 * e.value == p - 1 for e in v.evidence):
        notes = ("bound is optimal: a point with delta = (p-1)/2 occurs",)
    return Verdict(v.criterion, v.status, v.consequence, v.evidence, notes)

