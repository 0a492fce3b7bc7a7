"""Dense univariate polynomials over an arbitrary field object.

A polynomial is a list of raw field values, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).  Every function takes the
field as its first argument; the field only needs the raw-value protocol
of :class:`curvesing.fields.Field`.
"""
from __future__ import annotations

import random


def trim(F, a):
    z = F.zero
    while a and a[-1] == z:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def lc(a):
    return a[-1]


def const(F, c):
    return [] if c == F.zero else [c]


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    fadd = F.add
    for i, c in enumerate(b):
        out[i] = fadd(out[i], c)
    return trim(F, out)


def neg(F, a):
    return [F.neg(c) for c in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == F.zero:
        return []
    fmul = F.mul
    return trim(F, [fmul(x, c) for x in a])


def shift(F, a, n):
    return [F.zero] * n + list(a) if a else []


def mul(F, a, b):
    if not a or not b:
        return []
    z = F.zero
    fadd, fmul = F.add, F.mul
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == z:
            continue
        for j, y in enumerate(b):
            if y != z:
                out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    z = F.zero
    fsub, fmul = F.sub, F.mul
    inv_lc = F.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    q = [z] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c == z:
            continue
        c = fmul(c, inv_lc)
        q[i - db] = c
        for j in range(db + 1):
            if b[j] != z:
                r[i - db + j] = fsub(r[i - db + j], fmul(c, b[j]))
    return trim(F, q), trim(F, r[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def quo(F, a, b):
    return divmod_(F, a, b)[0]


def exact_quo(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(F, a):
    if not a or a[-1] == F.one:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    inv = F.inv(r0[-1])
    return scale(F, r0, inv), scale(F, s0, inv), scale(F, t0, inv)


def deriv(F, a):
    out = [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))]
    return trim(F, out)


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def powmod(F, a, e, m):
    result = [F.one]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = rem(F, mul(F, base, base), m)
    return result


def power(F, a, e):
    result = [F.one]
    base = list(a)
    while e:
        if e & 1:
            result = mul(F, result, base)
        e >>= 1
        if e:
            base = mul(F, base, base)
    return result


def pth_root(F, a):
    """p-th root of a polynomial in x^p; raises ValueError otherwise.

    Coefficients go through ``F.pth_root`` which may itself raise
    :class:`~curvesing.errors.NotAPthPower` over a function field.
    """
    p = F.p
    for i, c in enumerate(a):
        if i % p and c != F.zero:
            raise ValueError("polynomial is not a polynomial in x^p")
    return trim(F, [F.pth_root(a[i]) for i in range(0, len(a), p)])


# -- finite-field factorization ---------------------------------------------

def squarefree_decomposition(F, a):
    """Squarefree decomposition over a perfect field: [(factor, multiplicity)].

    Requires ``F.pth_root`` to succeed on every coefficient, which always
    holds for finite fields.
    """
    a = monic(F, a)
    out = []
    _sqf(F, a, 1, out)
    merged: dict[tuple, int] = {}
    order = []
    for f, m in out:
        key = tuple(f)
        if key not in merged:
            order.append(key)
            merged[key] = 0
        merged[key] += m
    return [(list(k), merged[k]) for k in order]


def _sqf(F, a, mult, out):
    if len(a) <= 1:
        return
    da = deriv(F, a)
    if not da:
        _sqf(F, monic(F, pth_root(F, a)), mult * F.p, out)
        return
    c = gcd(F, a, da)
    w = quo(F, a, c)
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = quo(F, w, y)
        if len(z) > 1:
            out.append((monic(F, z), i * mult))
        i += 1
        w = y
        c = quo(F, c, y)
    if len(c) > 1:
        _sqf(F, monic(F, pth_root(F, c)), mult * F.p, out)


def distinct_degree(F, a):
    """Distinct-degree factorization of a squarefree monic polynomial."""
    q = F.order
    out = []
    x = [F.zero, F.one]
    h = list(x)
    f = list(a)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, q, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = quo(F, f, g)
            h = rem(F, h, f)
    if len(f) > 1:
        out.append((monic(F, f), len(f) - 1))
    return out


def equal_degree(F, a, d, rng):
    """Split a product of distinct irreducibles of degree d (Cantor-Zassenhaus)."""
    n = len(a) - 1
    if n == d:
        return [a]
    q = F.order
    while True:
        r = trim(F, [F.random(rng) for _ in range(n)])
        if len(r) < 2:
            continue
        if F.p == 2:
            # trace map down to F_2
            k = F.degree_over_prime * d
            t = list(r)
            acc = list(r)
            for _ in range(k - 1):
                t = rem(F, mul(F, t, t), a)
                acc = add(F, acc, t)
            g = gcd(F, a, acc)
        else:
            e = (q ** d - 1) // 2
            g = gcd(F, a, sub(F, powmod(F, r, e, a), [F.one]))
        if 1 < len(g) < len(a):
            return equal_degree(F, g, d, rng) + equal_degree(F, quo(F, a, g), d, rng)


def factor_sort_key(F, f):
    # linear factors come out ordered by their root
    return (len(f), tuple(F.sort_key(F.neg(c)) for c in f[:-1]))


def factor(F, a, seed: int = 0):
    """Factor a nonzero polynomial over a finite field.

    Returns ``(leading_coefficient, [(monic_irreducible, multiplicity), ...])``
    in canonical order: by degree, then by the coefficients of the negated
    factor (so linear factors appear in increasing order of their root).
    """
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    lead = a[-1]
    out = []
    for f, m in squarefree_decomposition(F, a):
        for g, d in distinct_degree(F, f):
            for h in equal_degree(F, g, d, rng):
                out.append((monic(F, h), m))
    out.sort(key=lambda fm: (factor_sort_key(F, fm[0]), fm[1]))
    return lead, out


def roots(F, a, seed: int = 0):
    """Distinct roots in F of a nonzero polynomial, in canonical order."""
    if len(a) <= 1:
        return []
    _, facs = factor(F, a, seed)
    return [F.neg(f[0]) for f, _ in facs if len(f) == 2]


def is_irreducible(F, a) -> bool:
    """Rabin-style test: no factor of degree <= n/2 and x^(q^n) = x mod a."""
    n = len(a) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    a = monic(F, a)
    q = F.order
    x = [F.zero, F.one]
    h = list(x)
    for d in range(1, n // 2 + 1):
        h = powmod(F, h, q, a)
        if len(gcd(F, a, sub(F, h, x))) > 1:
            return False
    return True
