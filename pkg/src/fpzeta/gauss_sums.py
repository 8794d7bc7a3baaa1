"""Exact point counts of diagonal hypersurfaces via Gauss sums.

For sum_i a_i x_i^d = 0 over F_q (q = p^k, p not dividing d), Weil's formula
gives the affine count as

    q^n + (q - 1)/q * sum over nontrivial characters chi_0..chi_n with
    chi^d = 1 and prod chi_i = 1 of  prod chi_i(a_i)^-1 g(chi_i).

Characters of order dividing e = gcd(d, q - 1) are lifted from the small field
F_{p^f} (f = order of p mod e) by Hasse-Davenport, so no sum over F_q itself is
ever formed.  Gauss sums live in Z[zeta_m], m = e*p, represented as integer
vectors modulo x^m - 1; the total is reduced modulo the cyclotomic polynomial
and must come out an integer.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import ConsistencyError, DomainError
from .finite_field import get_field
from .numerics import qpoly_divmod

Cyclo = list[int]


def cyclo_mul(a: Cyclo, b: Cyclo) -> Cyclo:
    m = len(a)
    out = [0] * m
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % m] += x * y
    return out


def cyclo_pow(a: Cyclo, e: int) -> Cyclo:
    out = [0] * len(a)
    out[0] = 1
    while e:
        if e & 1:
            out = cyclo_mul(out, a)
        a = cyclo_mul(a, a)
        e >>= 1
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, r = qpoly_divmod(num, cyclotomic_polynomial(d))
            assert not any(r)
    return tuple(int(c) for c in num)


def cyclo_to_int(a: Cyclo) -> int:
    """The integer represented by a, or ConsistencyError if it is irrational."""
    _, r = qpoly_divmod(a, cyclotomic_polynomial(len(a)))
    if any(r[1:]) or r[0].denominator != 1:
        raise ConsistencyError("cyclotomic sum is not a rational integer")
    return int(r[0])


@lru_cache(maxsize=None)
def _base_gauss_sums(p: int, f: int, e: int) -> tuple[tuple[int, ...], ...]:
    """Gauss sums g(chi_j), j = 0..e-1, over F_{p^f} with chi_j(gen^l) = zeta_e^(j l)."""
    F = get_field(p, f)
    m = e * p
    xs = F.elements()[1:]
    logs = F.log[xs]
    tr = F.trace(xs)
    sums = []
    for j in range(e):
        v = [0] * m
        for lg, t in zip(logs.tolist(), tr.tolist()):
            v[(p * j * lg + e * t) % m] += 1
        sums.append(tuple(v))
    return tuple(sums)


def diagonal_affine_count(coeffs: Sequence[int], d: int, p: int, k: int) -> int:
    """Number of x in F_q^(n+1) with sum coeffs[i] * x_i^d = 0, q = p^k."""
    if d % p == 0:
        raise DomainError("diagonal formula needs p not dividing the degree")
    a = [c % p for c in coeffs]
    if any(c == 0 for c in a):
        raise DomainError("diagonal coefficients must be nonzero mod p")
    q = p**k
    n = len(a) - 1
    e = gcd(d, q - 1)
    if e == 1:
        return q**n
    f = 1
    while (p**f - 1) % e:
        f += 1
    B = get_field(p, f)
    Q = p**f
    m = e * p
    lift = k // f
    base = _base_gauss_sums(p, f, e)
    lifted = [None] + [
        [-c for c in cyclo_pow([-c for c in base[j]], lift)] for j in range(1, e)
    ]

    def twist(ai: int, j: int) -> int:
        # exponent of zeta_m for chi_j(N(a^-1)), N(a) = a^lift for a in F_p
        la = int(B.log[B.from_int(ai)])
        return (p * j * ((-lift * la) % (Q - 1))) % m

    zero = [0] * m
    one = [1] + [0] * (m - 1)
    dp = {0: one}
    for ai in a:
        nxt: dict[int, Cyclo] = {}
        for s, acc in dp.items():
            for j in range(1, e):
                term = lifted[j]
                sh = twist(ai, j)
                rotated = [term[(i - sh) % m] for i in range(m)]
                prod = cyclo_mul(acc, rotated)
                key = (s + j) % e
                cur = nxt.get(key, zero)
                nxt[key] = [x + y for x, y in zip(cur, prod)]
        dp = nxt
    S = cyclo_to_int(dp.get(0, zero))
    if (S * (q - 1)) % q:
        raise ConsistencyError("Gauss sum total not divisible by q")
    return q**n + (q - 1) * S // q


def diagonal_projective_count(coeffs: Sequence[int], d: int, p: int, k: int) -> int:
    q = p**k
    aff = diagonal_affine_count(coeffs, d, p, k)
    if (aff - 1) % (q - 1):
        raise ConsistencyError("affine cone count not compatible with projectivization")
    return (aff - 1) // (q - 1)
