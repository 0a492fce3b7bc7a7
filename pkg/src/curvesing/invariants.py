"""Jacobian numbers and delta invariants of curve germs.

jac is a colength of the Jacobian ideal (plus the equations).  delta comes
from two independent routes: multiplicities of infinitely near points
(blowups) for plane germs, and gap counting in the value semigroup of a
parametrized branch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import upoly
from .errors import (
    DegeneratePencilParameter,
    DepthExceeded,
    ExtensionRequired,
    NonReduced,
    NotStabilized,
    ZeroBranch,
)
from .fields import Field, extend_finite, gf, make_field, tower_embedding
from .jets import DEFAULT_NMAX, INFINITE, colength
from .points import (
    LocatedPoint,
    PointSpec,
    function_field_rational_roots,
    geometric_sqf,
    locate_point,
    singular_points,
    singular_points_with_tower,
)
from .poly import Poly, is_geometrically_reduced

MAX_BLOWUPS = 2000


# ---------------------------------------------------------------------------
# germs

@dataclass(frozen=True)
class PlaneGerm:
    f: Poly

    def __post_init__(self):
        if len(self.f.vars) != 2:
            raise ValueError("a plane germ needs exactly two variables")
        if self.f.is_zero():
            raise ValueError("the zero polynomial is not a curve germ")
        if self.f.constant_term() != self.f.field.zero:
            raise ValueError("germ does not pass through the origin")

    @property
    def field(self):
        return self.f.field


@dataclass(frozen=True)
class CompleteIntersectionGerm:
    equations: tuple

    def __post_init__(self):
        eqs = tuple(self.equations)
        object.__setattr__(self, "equations", eqs)
        if not eqs:
            raise ValueError("no equations")
        n = len(eqs[0].vars)
        if n != len(eqs) + 1:
            raise ValueError(f"{len(eqs)} equations need {len(eqs) + 1} variables, got {n}")
        for F in eqs:
            if F.constant_term() != F.field.zero:
                raise ValueError("equation does not vanish at the origin")


@dataclass(frozen=True)
class BranchParam:
    """u -> (x(u), y(u)); images are dense coefficient lists (constant first)."""

    field: Field
    x: tuple
    y: tuple
    param: str = "u"

    @classmethod
    def monomial(cls, field, a: int, b: int):
        one = field.one
        return cls(field, tuple([field.zero] * a + [one]), tuple([field.zero] * b + [one]))

    @classmethod
    def from_polys(cls, x: Poly, y: Poly, param: str = "u"):
        return cls(x.field, tuple(x.univariate(param)), tuple(y.univariate(param)), param)


def _as_poly(g) -> Poly:
    return g.f if isinstance(g, PlaneGerm) else g


# ---------------------------------------------------------------------------
# jac

def jacobian_number(g, nmax: int = DEFAULT_NMAX):
    """dim k[[S,T]]/(f, f_S, f_T); math.inf when the singular locus is a curve."""
    f = _as_poly(g)
    S, T = f.vars
    return colength([f, f.derivative(S), f.derivative(T)], nmax).value


def _det(F, M):
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(F, minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else M[0][0] * 0


def maximal_minors(equations) -> list:
    """Minors of the Jacobian matrix with one column removed, in column order."""
    eqs = list(equations)
    vars = eqs[0].vars
    J = [[F.derivative(v) for v in vars] for F in eqs]
    out = []
    for j in range(len(vars)):
        M = [row[:j] + row[j + 1:] for row in J]
        out.append(_det(eqs[0].field, M))
    return out


def jacobian_number_ci(g: CompleteIntersectionGerm, nmax: int = DEFAULT_NMAX):
    """Colength of (F_1..F_n, all maximal minors of the Jacobian matrix)."""
    eqs = list(g.equations)
    return colength(eqs + maximal_minors(eqs), nmax).value


# ---------------------------------------------------------------------------
# delta by blowing up

@dataclass
class BlowupNode:
    multiplicity: int
    residue_degree: int
    germ: Poly | None = dc_field(default=None, repr=False)
    children: list = dc_field(default_factory=list)
    smooth_points: int = 0  # geometric points on the exceptional line with a smooth, transversal branch

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_json(self):
        return {
            "m": self.multiplicity,
            "d": self.residue_degree,
            "smooth": self.smooth_points,
            "children": [c.to_json() for c in self.children],
        }


@dataclass
class BlowupTree:
    root: BlowupNode

    @property
    def delta(self) -> int:
        return sum(n.residue_degree * n.multiplicity * (n.multiplicity - 1) // 2
                   for n in self.root.walk())

    def nodes(self):
        return list(self.root.walk())

    @property
    def tangents(self) -> int:
        r = self.root
        if r.multiplicity <= 1:
            return 1 if r.multiplicity == 1 else 0
        return r.smooth_points + sum(c.residue_degree for c in r.children)

    def to_json(self):
        return self.root.to_json()


def _chart_s(f: Poly, m: int) -> Poly:
    # T = S*T', divided by S^m
    return f._new({(a + b - m, b): c for (a, b), c in f.terms.items()})


def _chart_t(f: Poly, m: int) -> Poly:
    # S = S'*T, divided by T^m
    return f._new({(a, a + b - m): c for (a, b), c in f.terms.items()})


def _tangent_cone(f: Poly, m: int) -> list:
    """f_m(1, x) as a dense list; its degree deficit is the multiplicity at infinity."""
    F = f.field
    cone = [F.zero] * (m + 1)
    for (a, b), c in f.terms.items():
        if a + b == m:
            cone[b] = c
    return upoly.trim(F, cone)


class _Budget:
    def __init__(self, n):
        self.left = n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise NotStabilized(MAX_BLOWUPS, "blowup sequence")


def _blowup(f: Poly, weight: int, seed: int, budget: _Budget) -> BlowupNode:
    budget.spend()
    m = f.order()
    node = BlowupNode(m, weight, f)
    if m <= 1:
        return node
    F = f.field
    cone = _tangent_cone(f, m)
    at_inf = m - (len(cone) - 1)
    if at_inf == 1:
        node.smooth_points += weight
    elif at_inf >= 2:
        node.children.append(_blowup(_chart_t(f, m), weight, seed, budget))
    if len(cone) <= 1:
        return node
    fs = _chart_s(f, m)
    if F.is_finite:
        _, facs = upoly.factor(F, cone, seed)
        for phi, mult in facs:
            e = len(phi) - 1
            if mult == 1:
                node.smooth_points += weight * e
                continue
            ext = extend_finite(F, phi, seed)
            child = fs.map_coeffs(ext.embed, ext.field) if e > 1 else fs
            node.children.append(_blowup(child.translate((ext.field.zero, ext.root)),
                                         weight * e, seed, budget))
        return node
    for h, mult in geometric_sqf(F, cone):
        e = len(h) - 1
        if mult == 1:
            node.smooth_points += weight * e
            continue
        rts = function_field_rational_roots(F, h)
        if len(rts) < e:
            raise ExtensionRequired(
                f"an infinitely near point is not rational over {F.desc}", depth=None)
        for r in sorted(rts, key=F.sort_key):
            node.children.append(_blowup(fs.translate((F.zero, r)), weight, seed, budget))
    return node


def delta_blowup(g, seed: int = 0):
    """delta = sum of d_P m_P (m_P - 1) / 2 over infinitely near points.

    Returns (delta, BlowupTree).  Over a function field every infinitely
    near point of multiplicity > 1 must be rational at the current stage.
    """
    f = _as_poly(g)
    if f.is_zero() or f.constant_term() != f.field.zero:
        raise ValueError("germ must vanish at the origin")
    red = is_geometrically_reduced(f, local=True)
    if red.status == "needs_extension":
        raise ExtensionRequired("reducedness needs a deeper p-th-root tower", depth=red.depth)
    if red.status == "no":
        raise NonReduced(f"germ {f} is not geometrically reduced", witness=red.witness)
    tree = BlowupTree(_blowup(f, 1, seed, _Budget(MAX_BLOWUPS)))
    return tree.delta, tree


# ---------------------------------------------------------------------------
# delta of a parametrized branch

def _series_mul(F, a, b, N):
    out = [F.zero] * N
    for i, x in enumerate(a[:N]):
        if x == F.zero:
            continue
        for j in range(min(len(b), N - i)):
            if b[j] != F.zero:
                out[i + j] = F.add(out[i + j], F.mul(x, b[j]))
    return out


def _order(F, a):
    for i, c in enumerate(a):
        if c != F.zero:
            return i
    return None


def semigroup_orders(b: BranchParam, N: int) -> list[bool]:
    """attained[i] for i < N: does some element of k[[x(u), y(u)]] have u-order i."""
    F = b.field
    x = list(b.x) + [F.zero] * max(0, N - len(b.x))
    y = list(b.y) + [F.zero] * max(0, N - len(b.y))
    ox, oy = _order(F, x[:N]), _order(F, y[:N])
    pivots: dict[int, list] = {}

    def insert(row):
        row = list(row)
        while True:
            o = _order(F, row)
            if o is None:
                return
            if o not in pivots:
                inv = F.inv(row[o])
                pivots[o] = [F.mul(c, inv) for c in row]
                return
            c = row[o]
            prow = pivots[o]
            for i in range(o, N):
                if prow[i] != F.zero:
                    row[i] = F.sub(row[i], F.mul(c, prow[i]))

    xs = (ox or N) if ox is not None else N
    ys = oy if oy is not None else N
    ybase = [F.one] + [F.zero] * (N - 1)
    for bexp in range(N // ys + 1):
        cur = ybase
        for aexp in range(N // xs + 1):
            if aexp * xs + bexp * ys >= N:
                break
            insert(cur)
            cur = _series_mul(F, cur, x, N)
        ybase = _series_mul(F, ybase, y, N)
    return [i in pivots for i in range(N)]


def delta_branch(b: BranchParam, nmax: int = DEFAULT_NMAX) -> int:
    """Number of gaps of the value semigroup of the branch."""
    F = b.field
    ox, oy = _order(F, list(b.x)), _order(F, list(b.y))
    if ox is None and oy is None:
        raise ZeroBranch("both coordinate images are zero")
    for o in (ox, oy):
        if o == 0:
            raise ValueError("branch images must have positive order")
    N = 8
    while N <= nmax:
        att = semigroup_orders(b, N)
        nz = [i for i in range(1, N) if att[i]]
        if nz:
            g = nz[0]
            run = 0
            for i in range(N):
                run = run + 1 if att[i] else 0
                if run >= g:
                    start = i - run + 1
                    return sum(1 for j in range(start) if not att[j])
        N *= 2
    raise NotStabilized(nmax, "value semigroup")


# ---------------------------------------------------------------------------
# per-point reports

@dataclass
class InvariantReport:
    """Invariants of a curve at one closed point.

    ``jac`` and ``delta`` are taken at one geometric representative over
    the field ``field``; the ``*_k`` values sum over the
    ``geometric_points`` conjugates, so ``jac_k`` is the jac of the
    closed point over the original field and ``delta_k`` its geometric delta.
    """

    point: str
    multiplicity: int
    jac: int | float | None
    delta: int | None = None
    residue_degree: int = 1
    geometric_points: int = 1
    field: str = ""
    tangents: int | None = None  # distinct tangent directions over the algebraic closure
    delta_reason: str | None = None
    jac_reason: str | None = None

    @property
    def is_node(self) -> bool:
        return self.multiplicity == 2 and self.tangents == 2

    @property
    def is_cusp(self) -> bool:
        # unibranch double point with delta 1: formally S^2 + T^3 once p >= 5
        return self.multiplicity == 2 and self.tangents == 1 and self.delta == 1

    @property
    def jac_k(self):
        if self.jac is None:
            return None
        return self.jac * self.geometric_points if self.jac != INFINITE else INFINITE

    @property
    def delta_k(self):
        return None if self.delta is None else self.delta * self.geometric_points

    def to_json(self):
        def num(v):
            return "inf" if v == INFINITE else v

        doc = {
            "point": self.point,
            "field": self.field,
            "multiplicity": self.multiplicity,
            "residue_degree": self.residue_degree,
            "geometric_points": self.geometric_points,
            "jac": num(self.jac),
            "jac_k": num(self.jac_k),
            "delta": self.delta,
            "delta_k": self.delta_k,
            "tangents": self.tangents,
        }
        if self.jac_reason:
            doc["jac_unavailable"] = self.jac_reason
        if self.delta_reason:
            doc["delta_unavailable"] = self.delta_reason
        return doc


def _stage(f: Poly, depth: int):
    F = f.field
    if F.is_finite or depth == F.depth:
        return f
    K = make_field(F.desc.with_depth(depth))
    return f.map_coeffs(tower_embedding(F, K), K)


def _residue_degree(F, loc: LocatedPoint, P: PointSpec) -> int:
    if F.is_finite or P.kind != "ideal":
        return loc.residue_degree
    K = loc.field
    level = max(K.level(c) for c in loc.coords)
    return F.p ** max(0, level - F.depth)


def locate_on(f: Poly, P: PointSpec, max_depth: int = 0, seed: int = 0):
    """Locate P, deepening the p-th-root tower up to ``max_depth`` extra steps.

    Returns (translated germ, LocatedPoint, residue degree over f's field).
    """
    F = f.field
    depth = F.depth if not F.is_finite else 0
    while True:
        g = _stage(f, depth)
        try:
            loc = locate_point(g.field, g.vars, P, seed)
            break
        except ExtensionRequired as exc:
            if F.is_finite or exc.depth is None:
                raise
            need = max(exc.depth, depth + 1)
            if need - F.depth > max_depth:
                raise DepthExceeded(
                    f"locating {P.to_json()} needs root depth {need} (max_depth {max_depth})") from exc
            depth = need
    germ = loc.translate(g)
    if germ.constant_term() != germ.field.zero:
        from .errors import PointNotOnCurve
        raise PointNotOnCurve(f"point {P.to_json()} does not lie on {f}")
    return germ, loc, _residue_degree(F, loc, P)


def _describe(P: PointSpec) -> str:
    if P.kind == "origin":
        return "origin"
    if P.kind == "rational":
        return "(" + ", ".join(P.coords) + ")"
    return "<" + ", ".join(P.ideal) + ">"


def jacobian_number_at(f: Poly, P: PointSpec, nmax: int = DEFAULT_NMAX,
                       max_depth: int = 1, seed: int = 0) -> InvariantReport:
    """jac at a closed point, extended-point value and k-level value.

    Over a finite field a point of residue degree d splits into d
    conjugates after extension, and jac_k = d * jac.  Over a function field
    the point is made rational by p-th roots (a purely inseparable step with
    a single point above), so jac_k = jac.
    """
    germ, loc, d = locate_on(f, P, max_depth, seed)
    return InvariantReport(
        point=_describe(P), multiplicity=germ.order(), jac=jacobian_number(germ, nmax),
        residue_degree=d, geometric_points=loc.geometric_points, field=str(germ.field.desc))


def geometric_delta(f: Poly, P: PointSpec, max_depth: int = 1, seed: int = 0) -> int:
    """Sum of delta over the geometric points above P."""
    return _delta_at(f, P, max_depth, seed)[0]


def _delta_at(f, P, max_depth, seed):
    F = f.field
    start = F.depth if not F.is_finite else 0
    cur = f
    while True:
        germ, loc, d = locate_on(cur, P, max_depth - (cur.field.depth - start if not F.is_finite else 0), seed)
        try:
            delta, tree = delta_blowup(germ, seed)
            return delta * loc.geometric_points, germ, loc, d, tree
        except ExtensionRequired as exc:
            if F.is_finite or exc.depth is None:
                raise
            need = germ.field.depth + 1
            if need - start > max_depth:
                raise DepthExceeded(
                    f"delta at {P.to_json()} needs root depth {need} (max_depth {max_depth})") from exc
            cur = _stage(f, need)


def analyze_point(f: Poly, P: PointSpec, nmax: int = DEFAULT_NMAX, max_depth: int = 1,
                  seed: int = 0) -> InvariantReport:
    """jac and geometric delta at P; delta failures are recorded, not raised."""
    rep = jacobian_number_at(f, P, nmax, max_depth, seed)
    try:
        total, germ, loc, d, tree = _delta_at(f, P, max_depth, seed)
        rep.delta = total // loc.geometric_points
        rep.tangents = tree.tangents
        if loc.geometric_points != rep.geometric_points:  # pragma: no cover
            raise AssertionError("inconsistent point location")
        rep.field = str(germ.field.desc)
    except (ExtensionRequired, DepthExceeded, NonReduced, NotStabilized) as exc:
        rep.delta_reason = f"{type(exc).__name__}: {exc}"
    return rep


def germ_report(f: Poly, nmax: int = DEFAULT_NMAX, seed: int = 0, point: str = "origin") -> InvariantReport:
    """jac and delta of a germ already at the origin (no field changes)."""
    rep = InvariantReport(point=point, multiplicity=f.order(), jac=jacobian_number(f, nmax),
                          field=str(f.field.desc))
    try:
        rep.delta, tree = delta_blowup(f, seed)
        rep.tangents = tree.tangents
    except (ExtensionRequired, NonReduced, NotStabilized) as exc:
        rep.delta_reason = f"{type(exc).__name__}: {exc}"
    return rep


# ---------------------------------------------------------------------------
# the Fermat pencil

@dataclass
class PencilMember:
    p: int
    c: object  # raw element of F_{p^2}
    curve: Poly  # the residual curve in the chart Y = 1, variables Z, W
    point: tuple  # raw coordinates of the singular point (in ``report.field``)
    germ: Poly
    report: InvariantReport
    tree: BlowupTree | None = None


def pencil_residual_curve(p: int, c=None, field: Field | None = None) -> tuple[Poly, object]:
    """(Y - c(Z-W))^(p+1) - Y^(p+1) + Z^(p+1) - W^(p+1), divided by Z - W, at Y = 1.

    ``c`` is a raw element of ``field`` (default F_{p^3} and its generator).
    Members with c^(p^2) = c are degenerate: there c^(1/p) = c^p and the
    member acquires an ordinary p-fold point instead of a unibranch one.
    """
    K = field if field is not None else gf(p, 3)
    if K.p != p:
        raise ValueError(f"field {K.desc} does not have characteristic {p}")
    if c is None:
        if not K.is_finite:
            c = K.transcendental_power(1)
        else:
            c = K.generator()
    if c == K.zero:
        raise DegeneratePencilParameter("pencil parameter must be nonzero")
    if K.pow(c, p * p) == c:
        raise DegeneratePencilParameter(
            f"pencil parameter {K.to_str(c)} lies in F_{p}^2, where the member has an ordinary {p}-fold point")
    vars = ("Y", "Z", "W")
    Y, Z, W = (Poly.var(K, vars, v) for v in vars)
    cc = Poly.const(K, vars, c)
    F = (Y - cc * (Z - W)) ** (p + 1) - Y ** (p + 1) + Z ** (p + 1) - W ** (p + 1)
    G = F.exact_div(Z - W)
    terms = {}
    for (_, b, e), v in G.terms.items():
        terms[(b, e)] = K.add(terms.get((b, e), K.zero), v)
    return Poly(K, ("Z", "W"), {k: v for k, v in terms.items() if v != K.zero}), c


def invariants_of_pencil_member(p: int, c=None, field: Field | None = None, nmax: int = DEFAULT_NMAX,
                                max_depth: int = 1, seed: int = 0) -> PencilMember:
    """Singular point of the residual plane section of the Fermat surface S_{p+1}, with jac and delta."""
    if p < 3 or p % 2 == 0:
        raise ValueError("the pencil construction needs an odd prime")
    g, c = pencil_residual_curve(p, c, field)
    locus, _ = singular_points_with_tower(g, max_depth, seed)
    if locus.non_isolated is not None:
        raise DegeneratePencilParameter(
            f"residual curve has a multiple component {locus.non_isolated}")
    if len(locus.points) != 1:
        raise DegeneratePencilParameter(
            f"expected one singular point in the chart Y = 1, found {len(locus.points)}")
    loc = locus.points[0]
    germ = loc.translate(g)
    delta, tree = delta_blowup(germ, seed)
    rep = InvariantReport(
        point="singular point of the residual curve", multiplicity=germ.order(),
        jac=jacobian_number(germ, nmax), delta=delta, residue_degree=loc.residue_degree,
        geometric_points=loc.geometric_points, field=str(germ.field.desc), tangents=tree.tangents)
    return PencilMember(p, c, g, loc.coords, germ, rep, tree)
