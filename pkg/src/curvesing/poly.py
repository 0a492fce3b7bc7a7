"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` maps exponent tuples to nonzero raw coefficients of one
:class:`~curvesing.fields.Field`.  Values are treated as immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from . import upoly
from .errors import FieldMismatch, ParseError
from .fields import Field, FieldDesc, FieldElem, make_field


class Poly:
    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: Field, vars, terms=None):
        self.field = field
        self.vars = tuple(vars)
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, field, vars):
        return cls(field, vars, {})

    @classmethod
    def const(cls, field, vars, c):
        n = len(tuple(vars))
        return cls(field, vars, {} if c == field.zero else {(0,) * n: c})

    @classmethod
    def var(cls, field, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(field, vars, {tuple(e): field.one})

    @classmethod
    def from_univariate(cls, field, vars, a, var):
        vars = tuple(vars)
        i = vars.index(var)
        terms = {}
        for d, c in enumerate(a):
            if c != field.zero:
                e = [0] * len(vars)
                e[i] = d
                terms[tuple(e)] = c
        return cls(field, vars, terms)

    def _new(self, terms):
        return Poly(self.field, self.vars, terms)

    def _check(self, other):
        if other.field is not self.field or other.vars != self.vars:
            raise FieldMismatch(
                f"incompatible polynomials: {self.field.desc}{self.vars} vs {other.field.desc}{other.vars}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly.const(self.field, self.vars, self.field.from_int(other))
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldMismatch("coefficient from another field")
            return Poly.const(self.field, self.vars, other.raw)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = F.add(out[e], c)
                if s == F.zero:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        fadd, fmul, z = F.add, F.mul, F.zero
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = fmul(c1, c2)
                if e in out:
                    v = fadd(out[e], v)
                    if v == z:
                        del out[e]
                        continue
                out[e] = v
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.field, self.vars, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        F = self.field
        if c == F.zero:
            return self._new({})
        return self._new({e: F.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.field, self.vars, self.field.from_int(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.field.desc == other.field.desc and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.desc, self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Least total degree of a term (-1 for the zero polynomial)."""
        return min((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def homogeneous_part(self, d: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, n: int) -> "Poly":
        """Drop terms of total degree >= n."""
        return self._new({e: c for e, c in self.terms.items() if sum(e) < n})

    def degree_in(self, v) -> int:
        i = self.vars.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def involves(self, v) -> bool:
        i = self.vars.index(v)
        return any(e[i] for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- calculus and substitution --------------------------------------
    def derivative(self, v) -> "Poly":
        i = self.vars.index(v)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k % F.p == 0:
                continue
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = F.mul(F.from_int(k), c)
        return self._new(out)

    def evaluate(self, point):
        """Evaluate at raw coordinates (one per variable)."""
        F = self.field
        acc = F.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = F.mul(v, F.pow(x, k))
            acc = F.add(acc, v)
        return acc

    def translate(self, shifts) -> "Poly":
        """Substitute X_i -> X_i + shifts[i] (raw values)."""
        f = self
        for i, a in enumerate(shifts):
            if a != self.field.zero:
                f = f._translate_one(i, a)
        return f

    def _translate_one(self, i, a):
        F = self.field
        p = F.p
        powers = [F.one]
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            while len(powers) <= k:
                powers.append(F.mul(powers[-1], a))
            for j in range(k + 1):
                b = comb(k, j) % p
                if not b:
                    continue
                v = F.mul(c, F.mul(F.from_int(b), powers[k - j]))
                ne = e[:i] + (j,) + e[i + 1:]
                if ne in out:
                    v = F.add(out[ne], v)
                    if v == F.zero:
                        del out[ne]
                        continue
                out[ne] = v
        return self._new(out)

    def subs(self, mapping: dict) -> "Poly":
        """Substitute polynomials (over the same field and variables) for variables."""
        F = self.field
        result = Poly.zero(F, self.vars)
        cache: dict = {}
        idx = [self.vars.index(v) for v in mapping]
        images = list(mapping.values())
        for e, c in self.terms.items():
            rest = list(e)
            term = Poly.const(F, self.vars, c)
            for i, img in zip(idx, images):
                k = e[i]
                rest[i] = 0
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = img ** k
                    term = term * cache[key]
            term = term * Poly(F, self.vars, {tuple(rest): F.one})
            result = result + term
        return result

    def map_coeffs(self, fn, field: Field) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v != field.zero:
                out[e] = v
        return Poly(field, self.vars, out)

    def with_vars(self, vars) -> "Poly":
        """Re-embed into a different variable list (superset or permutation)."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for k, j in zip(e, pos):
                ne[j] = k
            out[tuple(ne)] = c
        return Poly(self.field, vars, out)

    def drop_vars(self, vars) -> "Poly":
        """Restrict to ``vars``; the dropped variables must not occur."""
        vars = tuple(vars)
        keep = [self.vars.index(v) for v in vars]
        out = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j not in keep):
                raise ValueError("polynomial involves a dropped variable")
            out[tuple(e[j] for j in keep)] = c
        return Poly(self.field, vars, out)

    def univariate(self, v):
        """Dense coefficient list in ``v``; other variables must be absent."""
        i = self.vars.index(v)
        F = self.field
        d = self.degree_in(v)
        out = [F.zero] * (d + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial involves variables other than {v}")
            out[e[i]] = c
        return upoly.trim(F, out)

    def exact_div(self, g: "Poly") -> "Poly":
        """Exact quotient self / g (lex division); raises ArithmeticError otherwise."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        lt_e = max(g.terms)
        inv = F.inv(g.terms[lt_e])
        r = dict(self.terms)
        q = {}
        while r:
            e = max(r)
            d = tuple(a - b for a, b in zip(e, lt_e))
            if min(d) < 0:
                raise ArithmeticError("polynomial is not divisible")
            c = F.mul(r[e], inv)
            q[d] = c
            for ge, gc in g.terms.items():
                te = tuple(a + b for a, b in zip(d, ge))
                v = F.sub(r.get(te, F.zero), F.mul(c, gc))
                if v == F.zero:
                    r.pop(te, None)
                else:
                    r[te] = v
        return self._new(q)

    # -- printing --------------------------------------------------------
    def __str__(self):
        return unparse(self)

    def __repr__(self):
        return f"Poly({unparse(self)!r} over {self.field.desc} in {','.join(self.vars)})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, field: Field, vars):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = field
        self.vars = tuple(vars)
        self.tname = field.desc.transcendental
        self.gname = field.desc.generator if field.desc.ext_degree > 1 else None

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])
        return t

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        val = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return val

    def expr(self):
        val = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if t[1] == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.unary()
                if t[1] == "*":
                    val = val * rhs
                else:
                    val = self._divide(val, rhs, t[2])
            else:
                return val

    def _divide(self, num, den, pos):
        if not den.is_constant():
            raise ParseError("division by an expression in the curve variables", pos)
        c = den.constant_term()
        if c == self.F.zero:
            raise ParseError("division by zero", pos)
        return num.scale(self.F.inv(c))

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        t = self.peek()
        base, is_t = self.atom()
        nt = self.peek()
        if nt[0] == "op" and nt[1] == "^":
            self.take()
            et = self.peek()
            if et[0] == "int":
                self.take()
                return base ** et[1]
            if et[0] == "op" and et[1] == "(":
                if not is_t:
                    raise ParseError("fractional exponents are only allowed on the transcendental", et[2])
                self.take()
                n = self.take()
                if n[0] != "int":
                    raise ParseError("expected integer numerator", n[2])
                self.expect("/")
                d = self.take()
                if d[0] != "int":
                    raise ParseError("expected integer denominator", d[2])
                self.expect(")")
                return self._t_fraction(n[1], d[1], t[2])
            raise ParseError("expected a nonnegative integer exponent", et[2])
        return base

    def _t_fraction(self, num, den, pos):
        F = self.F
        scale = F.p ** F.depth
        if den == 0 or (num * scale) % den:
            raise ParseError(
                f"{self.tname}^({num}/{den}) needs a deeper p-th root tower than depth {F.depth}", pos)
        return Poly.const(F, self.vars, F.gen_power(num * scale // den))

    def atom(self):
        t = self.take()
        F = self.F
        if t[0] == "int":
            return Poly.const(F, self.vars, F.from_int(t[1])), False
        if t[0] == "name":
            name = t[1]
            if name in self.vars:
                return Poly.var(F, self.vars, name), False
            if name == self.tname:
                return Poly.const(F, self.vars, F.transcendental_power(1)), True
            if name == self.gname:
                g = F.generator() if F.is_finite else F.from_base(F.base.generator())
                return Poly.const(F, self.vars, g), False
            raise ParseError(f"unknown symbol {name!r}", t[2])
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect(")")
            return v, False
        raise ParseError(f"unexpected token {t[1]!r}", t[2])


def parse_poly(text: str, field: Field | FieldDesc, vars) -> Poly:
    """Parse an expression in the grammar of integers, symbols, + - * / ^ and parentheses."""
    if isinstance(field, FieldDesc):
        field = make_field(field)
    return _Parser(text, field, vars).parse()


def parse_const(text: str, field: Field | FieldDesc):
    """Parse a coefficient expression (no curve variables) to a raw field value."""
    if isinstance(field, FieldDesc):
        field = make_field(field)
    return _Parser(text, field, ()).parse().constant_term()


def unparse(f: Poly) -> str:
    F = f.field
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(f.vars, e) if k)
        cs = F.to_str(c)
        if not mono:
            parts.append(cs if "+" not in cs else f"({cs})")
        elif c == F.one:
            parts.append(mono)
        elif "+" in cs or "/" in cs:
            parts.append(f"({cs})*{mono}")
        else:
            parts.append(f"{cs}*{mono}")
    return "+".join(parts)


# ---------------------------------------------------------------------------
# bivariate gcd via subresultants over K[x][y]

def _to_rec(f: Poly, main: int):
    """Coefficients in the main variable, each a dense upoly in the other."""
    other = 1 - main
    F = f.field
    d = max((e[main] for e in f.terms), default=-1)
    rec = [[] for _ in range(d + 1)]
    for e, c in f.terms.items():
        a = rec[e[main]]
        k = e[other]
        if len(a) <= k:
            a.extend([F.zero] * (k + 1 - len(a)))
        a[k] = c
    return [upoly.trim(F, a) for a in rec]


def _from_rec(F, vars, rec, main: int) -> Poly:
    other = 1 - main
    terms = {}
    for i, a in enumerate(rec):
        for k, c in enumerate(a):
            if c != F.zero:
                e = [0, 0]
                e[main] = i
                e[other] = k
                terms[tuple(e)] = c
    return Poly(F, vars, terms)


def _rtrim(rec):
    while rec and not rec[-1]:
        rec.pop()
    return rec


def _content(F, rec):
    g = []
    for a in rec:
        g = upoly.gcd(F, g, a)
        if len(g) == 1:
            break
    return g


def _prem(F, A, B):
    """Pseudo-remainder lc(B)^(degA-degB+1) * A mod B in K[x][y]."""
    dB = len(B) - 1
    lcB = B[-1]
    R = [list(a) for a in A]
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= dB:
        dR = len(R) - 1
        lcR = R[-1]
        R = [upoly.mul(F, lcB, c) for c in R]
        for j, c in enumerate(B):
            R[dR - dB + j] = upoly.sub(F, R[dR - dB + j], upoly.mul(F, lcR, c))
        _rtrim(R)
        e -= 1
    if e > 0:
        m = upoly.power(F, lcB, e)
        R = [upoly.mul(F, m, c) for c in R]
    return R


def _subresultant_prs(F, A, B):
    """Last nonzero subresultant remainder (A, B primitive, deg A >= deg B)."""
    g = [F.one]
    h = [F.one]
    while True:
        delta = len(A) - len(B)
        R = _prem(F, A, B)
        if not R:
            return B
        if len(R) == 1:
            return R
        div = upoly.mul(F, g, upoly.power(F, h, delta))
        A, B = B, [upoly.exact_quo(F, c, div) for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = upoly.exact_quo(F, upoly.power(F, g, delta), upoly.power(F, h, delta - 1))


def gcd_bivariate(f: Poly, g: Poly, main: int = 1) -> Poly:
    """gcd of two bivariate polynomials, normalized in the main variable.

    The result's leading coefficient in the main variable has leading
    coefficient 1 (it is monic when that coefficient is constant).
    """
    f._check(g)
    if len(f.vars) != 2:
        raise ValueError("gcd_bivariate needs exactly two variables")
    F, vars = f.field, f.vars
    if f.is_zero():
        return _normalize(g, main)
    if g.is_zero():
        return _normalize(f, main)
    A, B = _to_rec(f, main), _to_rec(g, main)
    ca, cb = _content(F, A), _content(F, B)
    c = upoly.gcd(F, ca, cb)
    A = [upoly.exact_quo(F, x, ca) for x in A]
    B = [upoly.exact_quo(F, x, cb) for x in B]
    if len(A) < len(B):
        A, B = B, A
    if len(B) == 1:
        G = [[F.one]]
    else:
        G = _subresultant_prs(F, A, B)
        if len(G) == 1:
            G = [[F.one]]
        else:
            cg = _content(F, G)
            G = [upoly.exact_quo(F, x, cg) for x in G]
    G = [upoly.mul(F, c, x) for x in G]
    return _normalize(_from_rec(F, vars, G, main), main)


def _normalize(f: Poly, main: int) -> Poly:
    if f.is_zero():
        return f
    lead = max(f.terms, key=lambda e: (e[main], e[1 - main]))
    return f.scale(f.field.inv(f.terms[lead]))


def gcd_many(polys, main: int = 1) -> Poly:
    polys = [p for p in polys]
    g = polys[0]
    for h in polys[1:]:
        g = gcd_bivariate(g, h, main)
        if g.is_constant() and not g.is_zero():
            break
    return g


def resultant(f: Poly, g: Poly, v) -> Poly:
    """Resultant with respect to ``v`` of two bivariate polynomials (Sylvester + Bareiss)."""
    f._check(g)
    main = f.vars.index(v)
    F = f.field
    A, B = _to_rec(f, main), _to_rec(g, main)
    m, n = len(A) - 1, len(B) - 1
    if m < 0 or n < 0:
        return Poly.zero(F, f.vars)
    if m == 0 and n == 0:
        return Poly.const(F, f.vars, F.one)
    size = m + n
    M = []
    for i in range(n):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        M.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        M.append(row)
    det = _bareiss_det(F, M)
    return _from_rec(F, f.vars, [det], main)


def _bareiss_det(F, M):
    n = len(M)
    if n == 0:
        return [F.one]
    M = [list(r) for r in M]
    sign = 1
    prev = [F.one]
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly.sub(F, upoly.mul(F, M[i][j], M[k][k]), upoly.mul(F, M[i][k], M[k][j]))
                M[i][j] = upoly.exact_quo(F, num, prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return upoly.neg(F, d) if sign < 0 else d


# ---------------------------------------------------------------------------

def derivative(f: Poly, v) -> Poly:
    return f.derivative(v)


def multiplicity(f: Poly) -> int:
    """Least total degree of a term of a germ at the origin."""
    if f.is_zero():
        raise ValueError("multiplicity of the zero polynomial")
    return f.order()


@dataclass(frozen=True)
class Reducedness:
    status: str  # "yes" | "no" | "needs_extension"
    witness: Poly | None = None
    depth: int | None = None

    def __bool__(self):
        return self.status == "yes"


def pth_root_poly(f: Poly) -> Poly:
    """g with g^p = f for f in K[X^p, Y^p]; coefficient roots may raise NotAPthPower."""
    F = f.field
    p = F.p
    return f._new({tuple(k // p for k in e): F.pth_root(c) for e, c in f.terms.items()})


def is_geometrically_reduced(f: Poly, local: bool = False) -> Reducedness:
    """Decide whether f has a repeated factor over the algebraic closure.

    With ``local=True`` only factors through the origin count.
    """
    from .errors import NotAPthPower

    if f.is_zero():
        raise ValueError("zero polynomial")
    if len(f.vars) != 2:
        raise ValueError("geometric reducedness is implemented for plane curves")
    S, T = f.vars
    fs, ft = f.derivative(S), f.derivative(T)
    if fs.is_zero() and ft.is_zero():
        if f.is_constant():
            return Reducedness("yes")
        if local and f.constant_term() != f.field.zero:
            return Reducedness("yes")
        try:
            root = pth_root_poly(f)
        except NotAPthPower as exc:
            return Reducedness("needs_extension", depth=exc.needed_depth)
        return Reducedness("no", witness=root)
    g = gcd_many([f, fs, ft])
    if g.is_constant():
        return Reducedness("yes")
    if local and g.constant_term() != f.field.zero:
        return Reducedness("yes")
    return Reducedness("no", witness=g)


def factor_univariate(g: Poly, seed: int = 0):
    """Factor a univariate polynomial over a finite field.

    Returns [(monic irreducible Poly, multiplicity)] in canonical order.
    """
    from .errors import UnsupportedField

    F = g.field
    if not F.is_finite:
        raise UnsupportedField("factorization over function fields is not provided")
    used = [v for v in g.vars if g.involves(v)]
    if len(used) > 1:
        raise ValueError("factor_univariate needs a univariate polynomial")
    v = used[0] if used else g.vars[0]
    a = g.univariate(v)
    if not a:
        raise ValueError("cannot factor zero")
    _, facs = upoly.factor(F, a, seed)
    return [(Poly.from_univariate(F, g.vars, h, v), m) for h, m in facs]
