"""Closed points of plane curves: locating, translating, enumerating.

Points over a finite field are made rational by a deterministic finite
extension.  Over a function field F_q(s) only roots that are rational at
the current p-th-root tower stage are produced; anything else raises
:class:`ExtensionRequired` (with a depth hint when one more p-th root would
help, ``depth=None`` for separable extensions, which are not constructed).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import upoly
from .errors import ExtensionRequired, NotAPthPower, NotMaximal, PointNotOnCurve
from .fields import Field, FieldDesc, extend_finite, make_field, tower_embedding
from .poly import Poly, gcd_many, parse_const, parse_poly, resultant


@dataclass(frozen=True)
class PointSpec:
    """Origin, a rational point (coordinate expressions) or a maximal ideal."""

    kind: str  # "origin" | "rational" | "ideal"
    coords: tuple[str, ...] = ()
    ideal: tuple[str, ...] = ()

    @classmethod
    def origin(cls):
        return cls("origin")

    @classmethod
    def rational(cls, coords):
        return cls("rational", coords=tuple(str(c) for c in coords))

    @classmethod
    def from_ideal(cls, gens):
        return cls("ideal", ideal=tuple(str(g) for g in gens))

    def to_json(self):
        if self.kind == "origin":
            return "origin"
        if self.kind == "rational":
            return {"rational": list(self.coords)}
        return {"ideal": list(self.ideal)}

    @classmethod
    def from_json(cls, doc):
        if doc in (None, "origin"):
            return cls.origin()
        if isinstance(doc, dict) and "rational" in doc:
            return cls.rational(doc["rational"])
        if isinstance(doc, dict) and "ideal" in doc:
            return cls.from_ideal(doc["ideal"])
        from .errors import ParseError
        raise ParseError(f"bad point specification {doc!r}")


@dataclass
class LocatedPoint:
    """A geometric representative of a closed point.

    ``coords`` are raw values of ``field``; ``embed`` maps raw values of
    the original coefficient field into ``field``.  ``geometric_points`` is
    the number of points above the closed point over an algebraic closure
    (the separable degree); ``residue_degree`` is [k(x):k].
    """

    field: Field
    coords: tuple
    embed: Callable = dc_field(repr=False)
    residue_degree: int = 1
    geometric_points: int = 1

    def translate(self, f: Poly) -> Poly:
        g = f.map_coeffs(self.embed, self.field)
        return g.translate(self.coords)


def _identity(a):
    return a


# ---------------------------------------------------------------------------
# roots of univariate polynomials

def geometric_sqf(F: Field, a):
    """[(separable squarefree monic factor, geometric multiplicity)].

    Over a function field the inseparable part is resolved by taking p-th
    roots of coefficients, which raises NotAPthPower (an ExtensionRequired)
    when the tower is too shallow.
    """
    out: list = []
    _gsqf(F, upoly.monic(F, a), 1, out)
    return out


def _gsqf(F, a, mult, out):
    if len(a) <= 1:
        return
    da = upoly.deriv(F, a)
    if not da:
        _gsqf(F, upoly.monic(F, upoly.pth_root(F, a)), mult * F.p, out)
        return
    c = upoly.gcd(F, a, da)
    w = upoly.quo(F, a, c)
    i = 1
    while len(w) > 1:
        y = upoly.gcd(F, w, c)
        z = upoly.quo(F, w, y)
        if len(z) > 1:
            out.append((upoly.monic(F, z), i * mult))
        i += 1
        w = y
        c = upoly.quo(F, c, y)
    if len(c) > 1:
        _gsqf(F, c, mult, out)


def _monic_divisors(B, a, seed=0):
    if len(a) <= 1:
        return [[B.one]]
    _, facs = upoly.factor(B, a, seed)
    divs = [[B.one]]
    for f, m in facs:
        new = []
        for d in divs:
            acc = d
            new.append(acc)
            for _ in range(m):
                acc = upoly.mul(B, acc, f)
                new.append(acc)
        divs = new
    return divs


def function_field_rational_roots(F, g):
    """Roots in F = F_q(s) of a separable squarefree polynomial g."""
    B = F.base
    g = upoly.monic(F, g)
    roots = []
    if g and g[0] == F.zero:
        roots.append(F.zero)
        g = g[1:]
    if len(g) <= 1:
        return roots
    if len(g) == 2:
        return roots + [F.neg(g[0])]
    # clear denominators: g * L has coefficients in B[s]
    L = [B.one]
    for c in g:
        den = list(c[1])
        L = upoly.quo(B, upoly.mul(B, L, den), upoly.gcd(B, L, den))
    coeffs = [upoly.mul(B, list(c[0]), upoly.quo(B, L, list(c[1]))) for c in g]
    nums = _monic_divisors(B, coeffs[0])
    dens = _monic_divisors(B, coeffs[-1])
    units = [u for u in range(B.order) if u != B.zero] if B.order <= 64 else None
    if units is None:
        units = [B.one]
    seen = set()
    for n, d in itertools.product(nums, dens):
        if len(upoly.gcd(B, n, d)) > 1:
            continue
        for u in units:
            r = F._make(upoly.scale(B, n, u), list(d))
            if r in seen:
                continue
            seen.add(r)
            if upoly.evaluate(F, g, r) == F.zero:
                roots.append(r)
    return roots


def rational_roots(F: Field, a, need_all: bool = True, seed: int = 0):
    """[(root, geometric multiplicity)] for roots of ``a`` in F.

    Over a finite field every root in F is returned.  Over a function
    field, ``need_all`` demands that all geometric roots be rational here
    (else ExtensionRequired).
    """
    if len(a) <= 1:
        return []
    out = []
    for g, m in geometric_sqf(F, a):
        if F.is_finite:
            rts = upoly.roots(F, g, seed)
        else:
            rts = function_field_rational_roots(F, g)
            if need_all and len(rts) < len(g) - 1:
                raise ExtensionRequired(
                    f"a root of {F.to_str(g[0])}... generates a separable extension of {F.desc}",
                    depth=None)
        out.extend((r, m) for r in rts)
    out.sort(key=lambda rm: F.sort_key(rm[0]))
    return out


# ---------------------------------------------------------------------------
# eliminants

def eliminant(gens, var) -> list:
    """A nonzero univariate polynomial in ``var`` vanishing on V(gens), or [] if none found."""
    F = gens[0].field
    vars = gens[0].vars
    other = [v for v in vars if v != var][0]
    found = []
    for g in gens:
        if not g.is_zero() and not g.involves(other):
            found.append(g.univariate(var))
    if not found:
        nz = [g for g in gens if not g.is_zero()]
        for i in range(len(nz)):
            for j in range(i + 1, len(nz)):
                r = resultant(nz[i], nz[j], other)
                if not r.is_zero():
                    found.append(r.univariate(var))
        if not found and len(nz) >= 3:
            # every pair shares a factor; try generic combinations
            for c in range(1, 12):
                comb = nz[1] + nz[2].scale(F.from_int(c) if F.is_finite else F.from_int(c))
                r = resultant(nz[0], comb, other)
                if not r.is_zero():
                    found.append(r.univariate(var))
                    break
    if not found:
        return []
    e = found[0]
    for h in found[1:]:
        e = upoly.gcd(F, e, h)
    return upoly.monic(F, e)


def _restrict(g: Poly, idx: int, value) -> list:
    """Substitute coordinate ``idx`` := value; return dense univariate in the other variable."""
    F = g.field
    other = 1 - idx
    d = max((e[other] for e in g.terms), default=-1)
    out = [F.zero] * (d + 1)
    for e, c in g.terms.items():
        out[e[other]] = F.add(out[e[other]], F.mul(c, F.pow(value, e[idx])))
    return upoly.trim(F, out)


# ---------------------------------------------------------------------------

def _parse_gens(P: PointSpec, field, vars):
    return [parse_poly(g, field, vars) for g in P.ideal]


def locate_point(field: Field, vars, P: PointSpec, seed: int = 0) -> LocatedPoint:
    """Find a rational representative of the closed point P."""
    if len(vars) != 2 and P.kind == "ideal":
        raise ValueError("ideal points are supported for plane curves only")
    if P.kind == "origin":
        return LocatedPoint(field, (field.zero,) * len(vars), _identity)
    if P.kind == "rational":
        if len(P.coords) != len(vars):
            raise ValueError("coordinate count does not match the variables")
        coords = tuple(parse_const(c, field) for c in P.coords)
        return LocatedPoint(field, coords, _identity)
    gens = _parse_gens(P, field, vars)
    if field.is_finite:
        return _locate_finite(field, gens, seed)
    return _locate_function_field(field, gens)


def _locate_finite(K, gens, seed):
    vars = gens[0].vars
    E = eliminant(gens, vars[0])
    if len(E) <= 1:
        raise NotMaximal("ideal is not zero-dimensional or is the unit ideal")
    _, facs = upoly.factor(K, E, seed)
    found = None
    for phi, _ in facs:
        ext1 = extend_finite(K, phi, seed)
        L1 = ext1.field
        lifted = [g.map_coeffs(ext1.embed, L1) for g in gens]
        H = []
        for g in lifted:
            H = upoly.gcd(L1, H, _restrict(g, 0, ext1.root))
        if len(H) <= 1:
            continue
        if found is not None:
            raise NotMaximal("ideal has points over several irreducible factors")
        _, hfacs = upoly.factor(L1, H, seed)
        if len(hfacs) > 1:
            raise NotMaximal("ideal has several points over one first coordinate")
        psi = hfacs[0][0]
        ext2 = extend_finite(L1, psi, seed)
        L2 = ext2.field
        emb = _compose(ext1.embed, ext2.embed)
        d = (len(phi) - 1) * (len(psi) - 1)
        found = LocatedPoint(L2, (ext2.embed(ext1.root), ext2.root), emb, d, d)
    if found is None:
        raise NotMaximal("ideal has no points")
    # the ideal must be radical at the point: local colength 1
    from .jets import colength

    local = [found.translate(g) for g in gens]
    if colength(local).value != 1:
        raise NotMaximal("ideal is not radical at its point")
    return found


def _compose(f, g):
    if f is _identity:
        return g
    if g is _identity:
        return f
    return lambda a: g(f(a))


def _locate_function_field(K, gens):
    vars = gens[0].vars
    E = eliminant(gens, vars[0])
    if len(E) <= 1:
        raise NotMaximal("ideal is not zero-dimensional or is the unit ideal")
    roots0 = rational_roots(K, E)
    pts = []
    for a, _ in roots0:
        H = []
        for g in gens:
            H = upoly.gcd(K, H, _restrict(g, 0, a))
        if len(H) <= 1:
            continue
        for b, _ in rational_roots(K, H):
            pts.append((a, b))
    if not pts:
        raise NotMaximal("ideal has no points")
    if len(pts) > 1:
        raise NotMaximal("ideal has several geometric points; not a purely inseparable point")
    return LocatedPoint(K, pts[0], _identity)


def translate_to_origin(f: Poly, P: PointSpec, seed: int = 0) -> tuple[Poly, FieldDesc]:
    """Move the point P of f = 0 to the origin, extending the field if needed."""
    loc = locate_point(f.field, f.vars, P, seed)
    g = loc.translate(f)
    if g.constant_term() != g.field.zero:
        raise PointNotOnCurve(f"point {P.to_json()} does not lie on {f}")
    return g, loc.field.desc


def locate_with_tower(f: Poly, P: PointSpec, max_depth: int, seed: int = 0):
    """locate_point, adjoining p-th roots of the transcendental up to ``max_depth``.

    Returns (LocatedPoint, base_embedding, extra_depth).  Residue degrees
    are computed relative to the original field.
    """
    F = f.field
    if F.is_finite:
        return locate_point(F, f.vars, P, seed), _identity, 0
    start = F.depth
    cur = F
    while True:
        try:
            loc = locate_point(cur, f.vars, P, seed)
            break
        except ExtensionRequired as exc:
            if exc.depth is None or cur.depth + 1 - start > max_depth:
                raise
            cur = make_field(cur.desc.with_depth(max(exc.depth, cur.depth + 1)))
    emb = tower_embedding(F, cur)
    if P.kind == "ideal":
        level = max(cur.level(c) for c in loc.coords)
        loc.residue_degree = F.p ** max(0, level - start)
        loc.geometric_points = 1
    loc.embed = emb
    return loc, emb, cur.depth - start


# ---------------------------------------------------------------------------
# singular points

@dataclass
class SingularLocus:
    points: list  # LocatedPoint
    non_isolated: Poly | None = None  # common factor of (f, f_S, f_T) when positive-dimensional


def singular_points(f: Poly, seed: int = 0) -> SingularLocus:
    """Closed singular points of the affine plane curve f = 0.

    Over a finite field each closed point appears once with its residue
    degree.  Over a function field all geometric points must be rational
    at the current tower stage (else ExtensionRequired).
    """
    K = f.field
    S, T = f.vars
    gens = [f, f.derivative(S), f.derivative(T)]
    nz = [g for g in gens if not g.is_zero()]
    g = gcd_many(nz)
    if not g.is_constant():
        return SingularLocus([], non_isolated=g)
    E = eliminant(nz, S)
    if not E:
        raise AssertionError("no eliminant for an isolated singular locus")  # pragma: no cover
    pts = []
    if K.is_finite:
        if len(E) <= 1:
            return SingularLocus([])
        _, facs = upoly.factor(K, E, seed)
        for phi, _ in facs:
            ext1 = extend_finite(K, phi, seed)
            L1 = ext1.field
            H = []
            for h in nz:
                H = upoly.gcd(L1, H, _restrict(h.map_coeffs(ext1.embed, L1), 0, ext1.root))
            if len(H) <= 1:
                continue
            _, hfacs = upoly.factor(L1, H, seed)
            for psi, _ in hfacs:
                ext2 = extend_finite(L1, psi, seed)
                d = (len(phi) - 1) * (len(psi) - 1)
                pts.append(LocatedPoint(ext2.field, (ext2.embed(ext1.root), ext2.root),
                                        _compose(ext1.embed, ext2.embed), d, d))
        return SingularLocus(pts)
    if len(E) <= 1:
        return SingularLocus([])
    for a, _ in rational_roots(K, E):
        H = []
        for h in nz:
            H = upoly.gcd(K, H, _restrict(h, 0, a))
        if len(H) <= 1:
            continue
        for b, _ in rational_roots(K, H):
            pts.append(LocatedPoint(K, (a, b), _identity, 1, 1))
    return SingularLocus(pts)


def singular_points_with_tower(f: Poly, max_depth: int, seed: int = 0):
    """singular_points over a function field, deepening the tower as needed.

    Returns (SingularLocus, field used).  Points are rational over the
    returned field; their embed maps the original coefficients into it.
    """
    F = f.field
    if F.is_finite:
        return singular_points(f, seed), F
    cur = F
    while True:
        emb = tower_embedding(F, cur)
        g = f.map_coeffs(emb, cur)
        try:
            loc = singular_points(g, seed)
        except NotAPthPower as exc:
            if cur.depth + 1 - F.depth > max_depth:
                raise
            cur = make_field(cur.desc.with_depth(cur.depth + 1))
            continue
        for pt in loc.points:
            pt.embed = emb
        return loc, cur
