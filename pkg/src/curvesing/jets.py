"""Colength of an ideal of K[[x_1..x_n]] given by polynomial generators.

dim_N := dim K[[x]]/(I + m^N) is read off a matrix whose rows are the
truncations below degree N of (monomial * generator).  If dim_N equals
dim_{N+1}, then m^N lies in I + m^{N+1}, hence in I by Nakayama, and dim_N
is the colength.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from . import _linalg
from .errors import NotStabilized
from .poly import Poly, gcd_many

DEFAULT_NMAX = 256
INFINITE = math.inf


@dataclass(frozen=True)
class ColengthResult:
    value: int | float  # math.inf when the quotient is infinite-dimensional
    certified_at: int | None = None
    witness: Poly | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITE


@lru_cache(maxsize=64)
def monomials_below(n: int, N: int):
    """Exponent tuples of total degree < N in n variables, with their index map."""
    mons = []
    for d in range(N):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            mons.append(tuple(e))
    return tuple(mons), {e: i for i, e in enumerate(mons)}


def n_monomials_below(n: int, N: int) -> int:
    return math.comb(N - 1 + n, n) if N > 0 else 0


def relation_rows(gens, N: int):
    """Rows (column, raw) of the truncated multiplication matrix at precision N."""
    if not gens:
        return []
    n = len(gens[0].vars)
    mons, index = monomials_below(n, N)
    rows = []
    for g in gens:
        terms = [(e, c, sum(e)) for e, c in g.terms.items() if sum(e) < N]
        if not terms:
            continue
        o = min(t[2] for t in terms)
        for mu in mons:
            dmu = sum(mu)
            if dmu + o >= N:
                break
            row = []
            for e, c, de in terms:
                if de + dmu < N:
                    row.append((index[tuple(a + b for a, b in zip(mu, e))], c))
            rows.append(row)
    return rows


def local_dim_at_precision(gens, N: int, nvars: int | None = None) -> int:
    """dim K[[x]]/(I + m^N) (no certificate).

    With no nonzero generators this is the number of monomials of degree
    below N, in ``nvars`` variables (default: those of the generators, else 2).
    """
    if nvars is None:
        nvars = len(gens[0].vars) if gens else 2
    gens = [g for g in gens if not g.is_zero()]
    if N <= 0:
        return 0
    total = n_monomials_below(nvars, N)
    if not gens:
        return total
    F = gens[0].field
    if any(g.constant_term() != F.zero for g in gens):
        return 0
    return total - _linalg.rank(F, relation_rows(gens, N), total)


def colength(gens, nmax: int = DEFAULT_NMAX) -> ColengthResult:
    """Certified colength of (gens) at the origin, or Infinite with a witness.

    In two variables the gcd of the generators is checked first: a common
    factor through the origin makes the quotient infinite-dimensional, and
    otherwise the loop below is guaranteed to certify.
    """
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return ColengthResult(INFINITE, witness=gens[0] if gens else None)
    gens = nonzero
    F = gens[0].field
    if any(g.constant_term() != F.zero for g in gens):
        return ColengthResult(0, certified_at=0)
    n = len(gens[0].vars)
    if n == 2:
        g = gcd_many(gens)
        if not g.is_constant() and g.constant_term() == F.zero:
            return ColengthResult(INFINITE, witness=g)
    N = 4
    while N <= nmax:
        d0 = local_dim_at_precision(gens, N)
        d1 = local_dim_at_precision(gens, N + 1)
        if d0 == d1:
            return ColengthResult(d0, certified_at=N)
        N *= 2
    raise NotStabilized(nmax)
