"""Coefficient fields: F_p, F_{p^k} and rational function fields F_{p^k}(s).

Every field works on *raw* values (ints for finite fields, numerator and
denominator tuples for function fields) through methods on the field
object; :class:`FieldElem` wraps a raw value for the public API.

The p-th-root tower F_q(t^{1/p^e}) is stored as F_q(s) with t = s^{p^e}.
"""
from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import upoly
from .errors import FieldMismatch, NotAPthPower, UnsupportedField

MAX_TABLE_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for d in range(3, r + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldDesc:
    """Hashable description of a coefficient field.

    ``modulus`` lists the coefficients (constant term first) of the monic
    irreducible polynomial defining F_{p^k} over F_p; it is filled in with
    the default modulus when omitted.  ``generator`` is the symbol used for
    the class of x in F_p[x]/(modulus) when parsing and printing.
    """

    char: int
    ext_degree: int = 1
    transcendental: str | None = None
    root_depth: int = 0
    modulus: tuple[int, ...] | None = None
    generator: str = "a"

    def __post_init__(self):
        if not is_prime(self.char):
            raise ValueError(f"characteristic {self.char} is not prime")
        if self.ext_degree < 1:
            raise ValueError("ext_degree must be >= 1")
        if self.transcendental is None and self.root_depth != 0:
            raise ValueError("root_depth requires a transcendental")
        if self.root_depth < 0:
            raise ValueError("root_depth must be >= 0")
        if self.ext_degree == 1:
            object.__setattr__(self, "modulus", None)
        elif self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.char, self.ext_degree))
        else:
            mod = tuple(int(c) % self.char for c in self.modulus)
            if len(mod) != self.ext_degree + 1 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree ext_degree")
            if not upoly.is_irreducible(PrimeField(self.char), list(mod)):
                raise ValueError(f"modulus {mod} is reducible over F_{self.char}")
            object.__setattr__(self, "modulus", mod)

    @property
    def base(self) -> "FieldDesc":
        """The finite constant field (drops the transcendental)."""
        return FieldDesc(self.char, self.ext_degree, None, 0, self.modulus, self.generator)

    def with_depth(self, depth: int) -> "FieldDesc":
        return FieldDesc(self.char, self.ext_degree, self.transcendental, depth,
                         self.modulus, self.generator)

    def to_json(self) -> dict:
        out = {
            "char": self.char,
            "ext_degree": self.ext_degree,
            "transcendental": self.transcendental,
            "root_depth": self.root_depth,
        }
        if self.ext_degree > 1:
            out["modulus"] = list(self.modulus)
            if self.generator != "a":
                out["generator"] = self.generator
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "FieldDesc":
        mod = doc.get("modulus")
        return cls(
            int(doc["char"]),
            int(doc.get("ext_degree", 1)),
            doc.get("transcendental"),
            int(doc.get("root_depth", 0)),
            tuple(mod) if mod is not None else None,
            doc.get("generator", "a"),
        )

    def __str__(self):
        q = f"F_{self.char}" if self.ext_degree == 1 else f"F_{self.char}^{self.ext_degree}"
        if self.transcendental is None:
            return q
        t = self.transcendental
        if self.root_depth:
            return f"{q}({t}^(1/{self.char ** self.root_depth}))"
        return f"{q}({t})"


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, enumerating sum c_i p^i upward.

    For (3, 2) this is x^2 + 1; for (5, 2) it is x^2 + 2.
    """
    F = PrimeField(p)
    for code in range(p ** k):
        coeffs = [(code // p ** i) % p for i in range(k)] + [1]
        if coeffs[0] == 0:
            continue
        if upoly.is_irreducible(F, coeffs):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """Raw-value protocol.  Subclasses fill in the arithmetic."""

    desc: FieldDesc
    p: int
    order: int | None = None
    degree_over_prime: int = 1
    is_finite = True

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def elem(self, raw) -> "FieldElem":
        return FieldElem(self, raw)

    def __repr__(self):
        return f"<{type(self).__name__} {self.desc}>"


class PrimeField(Field):
    def __init__(self, p: int):
        self.p = p
        self.order = p
        self.zero = 0
        self.one = 1
        self.desc = FieldDesc(p) if is_prime(p) else None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p) if e >= 0 else pow(self.inv(a), -e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def frobenius(self, a):
        return a

    def pth_root(self, a):
        return a

    def random(self, rng):
        return rng.randrange(self.p)

    def sort_key(self, a):
        return a

    def elements(self):
        return range(self.p)

    def to_str(self, a) -> str:
        return str(a)


class GaloisField(Field):
    """F_{p^k} with elements encoded as integers sum c_i p^i.

    Multiplication uses log/antilog tables and addition uses Zech
    logarithms, so both are a handful of list lookups.
    """

    def __init__(self, desc: FieldDesc):
        p, k = desc.char, desc.ext_degree
        q = p ** k
        if q > MAX_TABLE_ORDER:
            raise UnsupportedField(f"F_{p}^{k} is larger than the supported table size")
        self.desc = desc
        self.p = p
        self.order = q
        self.degree_over_prime = k
        self.zero = 0
        self.one = 1
        self.modulus = list(desc.modulus)
        self.gen_name = desc.generator
        self._build_tables()

    def _digits(self, code):
        p = self.p
        return [(code // p ** i) % p for i in range(self.degree_over_prime)]

    def _encode(self, digits):
        p = self.p
        return sum(d * p ** i for i, d in enumerate(digits))

    def _slow_mul(self, a, b):
        F = PrimeField(self.p)
        prod = upoly.rem(F, upoly.mul(F, upoly.trim(F, self._digits(a)),
                                      upoly.trim(F, self._digits(b))), self.modulus)
        return self._encode(prod)

    def _build_tables(self):
        q, p = self.order, self.p
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        self.primitive = g
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp = exp + exp
        self._log = log
        # zech[n] = log(1 + g^n), -1 when 1 + g^n = 0
        zech = []
        for n in range(q - 1):
            x = exp[n]
            one_plus = x - (x % p) + ((x % p) + 1) % p
            zech.append(-1 if one_plus == 0 else log[one_plus])
        self._zech = zech
        self._neg_shift = 0 if p == 2 else (q - 1) // 2

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if a == 0 or self.p == 2:
            return a
        return self._exp[self._log[a] + self._neg_shift]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self.desc}")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def from_int(self, n):
        return n % self.p

    def frobenius(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        return self.pow(a, self.order // self.p)

    def random(self, rng):
        return rng.randrange(self.order)

    def sort_key(self, a):
        return a

    def elements(self):
        return range(self.order)

    def generator(self):
        return self.p  # the class of x

    def to_str(self, a) -> str:
        digits = self._digits(a)
        parts = []
        for i in range(len(digits) - 1, -1, -1):
            c = digits[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"


class FunctionField(Field):
    """F_q(s) where s = t^{1/p^depth}.

    Raw values are ``(num, den)`` tuples of base-field raw coefficients,
    constant term first, with ``den`` monic and coprime to ``num``.
    """

    is_finite = False

    def __init__(self, desc: FieldDesc):
        self.desc = desc
        self.base = make_field(desc.base)
        self.p = desc.char
        self.order = None
        self.degree_over_prime = desc.ext_degree
        self.depth = desc.root_depth
        self.name = desc.transcendental
        B = self.base
        self.zero = ((), (B.one,))
        self.one = ((B.one,), (B.one,))

    # internal: build a canonical value from list polys
    def _make(self, num, den):
        B = self.base
        if not den:
            raise ZeroDivisionError(f"division by zero in {self.desc}")
        if not num:
            return self.zero
        if len(den) > 1:
            g = upoly.gcd(B, num, den)
            if len(g) > 1:
                num = upoly.exact_quo(B, num, g)
                den = upoly.exact_quo(B, den, g)
        c = den[-1]
        if c != B.one:
            ic = B.inv(c)
            num = upoly.scale(B, num, ic)
            den = upoly.scale(B, den, ic)
        return (tuple(num), tuple(den))

    def from_poly(self, num):
        return self._make(list(num), [self.base.one])

    def from_base(self, c):
        return self.zero if c == self.base.zero else ((c,), (self.base.one,))

    def gen_power(self, n: int):
        B = self.base
        return (tuple([B.zero] * n + [B.one]), (B.one,))

    def transcendental_power(self, n: int):
        """t^n, i.e. s^(n p^depth)."""
        return self.gen_power(n * self.p ** self.depth)

    def add(self, a, b):
        B = self.base
        if a[1] == b[1]:
            if len(a[1]) == 1:
                num = upoly.add(B, list(a[0]), list(b[0]))
                return (tuple(num), a[1]) if num else self.zero
            return self._make(upoly.add(B, list(a[0]), list(b[0])), list(a[1]))
        num = upoly.add(B, upoly.mul(B, list(a[0]), list(b[1])),
                        upoly.mul(B, list(b[0]), list(a[1])))
        return self._make(num, upoly.mul(B, list(a[1]), list(b[1])))

    def neg(self, a):
        return (tuple(self.base.neg(c) for c in a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        if not a[0] or not b[0]:
            return self.zero
        if len(a[1]) == 1 and len(b[1]) == 1:
            return (tuple(upoly.mul(B, list(a[0]), list(b[0]))), a[1])
        return self._make(upoly.mul(B, list(a[0]), list(b[0])),
                          upoly.mul(B, list(a[1]), list(b[1])))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError(f"division by zero in {self.desc}")
        return self._make(list(a[1]), list(a[0]))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def frobenius(self, a):
        B = self.base

        def frob(poly):
            out = [B.zero] * ((len(poly) - 1) * self.p + 1) if poly else []
            for i, c in enumerate(poly):
                out[i * self.p] = B.frobenius(c)
            return tuple(out)

        return (frob(a[0]), frob(a[1]))

    def pth_root(self, a):
        B, p = self.base, self.p
        for poly in a:
            for i, c in enumerate(poly):
                if i % p and c != B.zero:
                    raise NotAPthPower(self.depth + 1)
        return (tuple(B.pth_root(a[0][i]) for i in range(0, len(a[0]), p)),
                tuple(B.pth_root(a[1][i]) for i in range(0, len(a[1]), p)))

    def is_pth_power(self, a) -> bool:
        p = self.p
        return all(i % p == 0 or c == self.base.zero for poly in a for i, c in enumerate(poly))

    def level(self, a) -> int:
        """Least j such that ``a`` lies in F_q(t^{1/p^j})."""
        p = self.p
        for j in range(self.depth + 1):
            step = p ** (self.depth - j)
            if all(i % step == 0 or c == self.base.zero for poly in a for i, c in enumerate(poly)):
                return j
        return self.depth  # pragma: no cover

    def random(self, rng):
        B = self.base
        num = upoly.trim(B, [B.random(rng) for _ in range(rng.randint(0, 3))])
        den = upoly.trim(B, [B.random(rng) for _ in range(rng.randint(0, 1))] + [B.one])
        return self._make(num, den)

    def sort_key(self, a):
        B = self.base
        return (len(a[1]), tuple(B.sort_key(c) for c in a[1]),
                len(a[0]), tuple(B.sort_key(c) for c in a[0]))

    def _mono(self, n):
        if n == 0:
            return ""
        scale = self.p ** self.depth
        g = math.gcd(n, scale)
        num, den = n // g, scale // g
        if den == 1:
            return self.name if num == 1 else f"{self.name}^{num}"
        return f"{self.name}^({num}/{den})"

    def _poly_str(self, poly):
        B = self.base
        parts = []
        for i in range(len(poly) - 1, -1, -1):
            c = poly[i]
            if c == B.zero:
                continue
            mono = self._mono(i)
            cs = B.to_str(c)
            if not mono:
                parts.append(cs)
            elif c == B.one:
                parts.append(mono)
            elif "+" in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return "+".join(parts) if parts else "0"

    def to_str(self, a) -> str:
        num = self._poly_str(a[0])
        if len(a[1]) == 1:
            return num
        return f"({num})/({self._poly_str(a[1])})"

    def embed_up(self, a):
        """Image of ``a`` in the field one level deeper (s -> s^p)."""
        B, p = self.base, self.p

        def up(poly):
            if not poly:
                return ()
            out = [B.zero] * ((len(poly) - 1) * p + 1)
            for i, c in enumerate(poly):
                out[i * p] = c
            return tuple(out)

        return (up(a[0]), up(a[1]))


_field_lock = threading.RLock()


@functools.lru_cache(maxsize=None)
def _make_field(desc: FieldDesc) -> Field:
    if desc.transcendental is not None:
        return FunctionField(desc)
    if desc.ext_degree == 1:
        F = PrimeField(desc.char)
        F.desc = desc
        return F
    return GaloisField(desc)


def make_field(desc: FieldDesc) -> Field:
    """Cached field construction (one object per descriptor)."""
    with _field_lock:
        return _make_field(desc)


def prime_field(p: int) -> Field:
    return make_field(FieldDesc(p))


def gf(p: int, k: int = 1, **kw) -> Field:
    return make_field(FieldDesc(p, k, **kw))


def function_field(p: int, name: str = "t", depth: int = 0, k: int = 1) -> Field:
    return make_field(FieldDesc(p, k, name, depth))


# -- public element wrapper --------------------------------------------------

class FieldElem:
    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field.desc} vs {other.field.desc}")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.div(o, self.raw))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return isinstance(other, FieldElem) and other.field is self.field and other.raw == self.raw

    def __hash__(self):
        return hash((self.field.desc, self.raw))

    def is_zero(self) -> bool:
        return self.raw == self.field.zero

    def __str__(self):
        return self.field.to_str(self.raw)

    def __repr__(self):
        return f"FieldElem({self.field.to_str(self.raw)!r} in {self.field.desc})"


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def frobenius(a: FieldElem) -> FieldElem:
    return FieldElem(a.field, a.field.frobenius(a.raw))


def pth_root(a: FieldElem) -> FieldElem:
    return FieldElem(a.field, a.field.pth_root(a.raw))


def adjoin_pth_root(desc: FieldDesc) -> tuple[FieldDesc, Callable[[FieldElem], FieldElem]]:
    """Raise the root depth by one; returns the new descriptor and the embedding."""
    if desc.transcendental is None:
        raise ValueError("adjoin_pth_root needs a transcendental generator")
    new = desc.with_depth(desc.root_depth + 1)
    src, dst = make_field(desc), make_field(new)

    def embed(a: FieldElem) -> FieldElem:
        if a.field is not src:
            raise FieldMismatch(f"element of {a.field.desc}, expected {desc}")
        return FieldElem(dst, src.embed_up(a.raw))

    return new, embed


def tower_embedding(src: FunctionField, dst: FunctionField) -> Callable:
    """Raw map from a shallower tower stage into a deeper one."""
    steps = dst.depth - src.depth
    if steps < 0 or src.desc.with_depth(dst.depth) != dst.desc:
        raise FieldMismatch(f"cannot embed {src.desc} into {dst.desc}")
    if steps == 0:
        return lambda a: a
    chain = [make_field(src.desc.with_depth(src.depth + i)) for i in range(steps)]

    def embed(a):
        for F in chain:
            a = F.embed_up(a)
        return a

    return embed


# -- finite extensions -------------------------------------------------------

@dataclass
class Extension:
    """L = K[x]/(phi) realised as a table field, with the embedding K -> L and a root of phi."""

    field: Field
    embed: Callable = dc_field(repr=False)
    root: object = None


@functools.lru_cache(maxsize=None)
def _embedding_table(src_desc: FieldDesc, dst_desc: FieldDesc) -> tuple:
    src, dst = make_field(src_desc), make_field(dst_desc)
    if src_desc.ext_degree == 1:
        return tuple(range(src.order))
    if dst_desc.ext_degree % src_desc.ext_degree:
        raise FieldMismatch(f"{src_desc} does not embed in {dst_desc}")
    rts = upoly.roots(dst, list(src.modulus))
    r = rts[0]
    table = []
    for code in range(src.order):
        acc = dst.zero
        for i, d in enumerate(src._digits(code)):
            if d:
                acc = dst.add(acc, dst.mul(d, dst.pow(r, i)))
        table.append(acc)
    return tuple(table)


def finite_embedding(src: Field, dst: Field) -> Callable:
    table = _embedding_table(src.desc, dst.desc)
    return table.__getitem__


def extend_finite(K: Field, phi: list, seed: int = 0) -> Extension:
    """Adjoin a root of the irreducible ``phi`` (raw coefficients over K)."""
    if not K.is_finite:
        raise UnsupportedField("finite extensions of function fields are not provided")
    d = len(phi) - 1
    if d == 1:
        return Extension(K, lambda a: a, K.neg(K.div(phi[0], phi[1])))
    L = gf(K.p, K.degree_over_prime * d)
    emb = finite_embedding(K, L)
    rts = upoly.roots(L, [emb(c) for c in phi], seed)
    if not rts:
        raise ValueError("polynomial has no root in the extension; is it irreducible?")
    return Extension(L, emb, rts[0])
