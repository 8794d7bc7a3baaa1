"""Hodge diamonds and the two exponent sums built from them.

``h[i][j]`` is h^i(X, Omega^j): the row index is the cohomological degree,
the column index the exterior power.  Catalog Hodge numbers are the
characteristic-zero values, which is what the smooth proper catalog needs
(projective spaces, curves, products, diagonal hypersurfaces with p not
dividing the degree, blowups at a point).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import ArgumentError, UnsupportedError
from .numerics import IntPolynomial
from .schemes import (
    BlowupAtRationalPoint,
    DisjointUnion,
    EllipticCurve,
    Empty,
    Point,
    Product,
    ProjectiveHypersurface,
    ProjectiveSpace,
    Scheme,
    dimension,
    smoothness,
)


@dataclass(frozen=True)
class HodgeDiamond:
    d: int
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        h = tuple(tuple(int(x) for x in row) for row in self.h)
        if self.d < 0 or len(h) != self.d + 1 or any(len(r) != self.d + 1 for r in h):
            raise ArgumentError("Hodge matrix must be (d+1)x(d+1)")
        if any(x < 0 for r in h for x in r):
            raise ArgumentError("Hodge numbers are nonnegative")
        object.__setattr__(self, "h", h)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "HodgeDiamond":
        return cls(len(rows) - 1, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls) -> "HodgeDiamond":
        """Diamond of the empty scheme; absorbing for the Kunneth product."""
        return cls(0, ((0,),))

    def at(self, i: int, j: int) -> int:
        if 0 <= i <= self.d and 0 <= j <= self.d:
            return self.h[i][j]
        return 0

    def betti(self) -> list[int]:
        return [sum(self.at(i, k - i) for i in range(k + 1)) for k in range(2 * self.d + 1)]

    def is_serre_symmetric(self) -> bool:
        d = self.d
        return all(self.h[i][j] == self.h[d - i][d - j] for i in range(d + 1) for j in range(d + 1))

    def padded(self, d: int) -> "HodgeDiamond":
        return HodgeDiamond(d, tuple(tuple(self.at(i, j) for j in range(d + 1)) for i in range(d + 1)))

    def __add__(self, other: "HodgeDiamond") -> "HodgeDiamond":
        d = max(self.d, other.d)
        a, b = self.padded(d), other.padded(d)
        return HodgeDiamond(d, tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a.h, b.h)))

    def to_json(self) -> dict:
        return {"d": self.d, "h": [list(r) for r in self.h]}

    @classmethod
    def from_json(cls, doc: dict) -> "HodgeDiamond":
        return cls(int(doc["d"]), tuple(tuple(r) for r in doc["h"]))


POINT = HodgeDiamond(0, ((1,),))


def projective_space(N: int) -> HodgeDiamond:
    return HodgeDiamond(N, tuple(tuple(int(i == j) for j in range(N + 1)) for i in range(N + 1)))


def curve(genus: int) -> HodgeDiamond:
    return HodgeDiamond(1, ((1, genus), (genus, 1)))


def kunneth(a: HodgeDiamond, b: HodgeDiamond) -> HodgeDiamond:
    d = a.d + b.d
    out = [[0] * (d + 1) for _ in range(d + 1)]
    for i1 in range(a.d + 1):
        for j1 in range(a.d + 1):
            x = a.h[i1][j1]
            if not x:
                continue
            for i2 in range(b.d + 1):
                for j2 in range(b.d + 1):
                    out[i1 + i2][j1 + j2] += x * b.h[i2][j2]
    return HodgeDiamond.from_rows(out)


# -- hypersurfaces -----------------------------------------------------------

def _ypoly_binomial_power(c0: IntPolynomial, c1: IntPolynomial, d: int) -> list[IntPolynomial]:
    """Coefficients in z of (c0 + c1 z)^d, each a polynomial in y."""
    return [c0 ** (d - k) * c1**k * comb(d, k) for k in range(d + 1)]


def _zmul(a: list[IntPolynomial], b: list[IntPolynomial], K: int) -> list[IntPolynomial]:
    out = [IntPolynomial((0,))] * K
    for i, x in enumerate(a[:K]):
        for j, y in enumerate(b[: K - i]):
            out[i + j] = out[i + j] + x * y
    return out


@lru_cache(maxsize=None)
def chi_y_hypersurface(n: int, d: int) -> tuple[int, ...]:
    """chi(Omega^j), j = 0..n, for a smooth degree-d hypersurface of dimension n.

    Read off Hirzebruch's generating function
    sum_n chi_y(V_d^n) z^(n+1) = ((1+zy)^d - (1-z)^d) / (((1+zy)^d + y(1-z)^d)(1+zy)(1-z)),
    expanded in z over Z[y].  The constant term of the denominator is 1 + y,
    so the k-th coefficient of its inverse is N_k / (1+y)^(k+1) with N_k integral.
    """
    K = n + 2
    one, y = IntPolynomial.one(), IntPolynomial((0, 1))
    plus = _ypoly_binomial_power(one, y, d)  # (1 + zy)^d
    minus = _ypoly_binomial_power(one, -one, d)  # (1 - z)^d
    pad = lambda a: a[:K] + [IntPolynomial((0,))] * (K - len(a))
    A = pad([x - z for x, z in zip(pad(plus), pad(minus))])
    D = _zmul(pad([x + y * z for x, z in zip(pad(plus), pad(minus))]), pad([one, y]), K)
    D = _zmul(D, pad([one, -one]), K)
    u = one + y
    N = [one]
    for k in range(1, K):
        acc = IntPolynomial((0,))
        for j in range(1, k + 1):
            acc = acc + D[j] * N[k - j] * u ** (j - 1)
        N.append(-acc)
    top = IntPolynomial((0,))
    for i in range(K):
        top = top + A[i] * N[K - 1 - i] * u**i
    coeff = top.exact_div(u**K)
    if coeff is None:
        raise ArgumentError("chi_y coefficient is not a polynomial")  # pragma: no cover
    return tuple(coeff[j] for j in range(n + 1))


def jacobian_ring_dimension(n_vars: int, d: int, m: int) -> int:
    """Monomials of degree m in n_vars variables with every exponent <= d - 2."""
    if m < 0:
        return 0
    total = 0
    for i in range(n_vars + 1):
        top = m - i * (d - 1) + n_vars - 1
        if top < n_vars - 1:
            break
        total += (-1) ** i * comb(n_vars, i) * comb(top, n_vars - 1)
    return total


def primitive_middle_hodge(n: int, d: int) -> list[int]:
    """h^{q, n-q}_prim for q = 0..n from the Jacobian ring of the Fermat hypersurface."""
    return [jacobian_ring_dimension(n + 2, d, (q + 1) * d - n - 2) for q in range(n + 1)]


def hypersurface(N: int, d: int) -> HodgeDiamond:
    """Smooth degree-d hypersurface in P^N (dimension n = N - 1), via chi_y."""
    n = N - 1
    if n < 0 or d < 1:
        raise ArgumentError("need N >= 1 and d >= 1")
    chi = chi_y_hypersurface(n, d)
    h = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        if 2 * j == n:
            h[j][j] = (-1) ** j * chi[j]
        else:
            h[j][j] = 1
            h[n - j][j] = (-1) ** (n - j) * (chi[j] - (-1) ** j)
    return HodgeDiamond.from_rows(h)


def hodge_of(X: Scheme, p: int | None = None) -> HodgeDiamond:
    """Hodge diamond of a smooth proper catalog scheme (characteristic-zero values)."""
    if p is not None:
        s = smoothness(X, p)
        if not s.smooth:
            raise UnsupportedError(f"{X.name} is not smooth proper over F_{p}: {s.note}")
    match X:
        case Empty():
            return HodgeDiamond.zero()
        case Point():
            return POINT
        case ProjectiveSpace(N):
            return projective_space(N)
        case EllipticCurve():
            return curve(1)
        case ProjectiveHypersurface():
            return hypersurface(X.N, X.degree)
        case Product(l, r):
            return kunneth(hodge_of(l), hodge_of(r))
        case DisjointUnion(l, r):
            return hodge_of(l) + hodge_of(r)
        case BlowupAtRationalPoint(base):
            hd = hodge_of(base)
            rows = [list(r) for r in hd.h]
            for i in range(1, dimension(base)):
                rows[i][i] += 1
            return HodgeDiamond.from_rows(rows)
    raise UnsupportedError(f"no Hodge diamond for {X.name}: not a smooth proper catalog scheme")


# -- the two exponents -------------------------------------------------------


def correction_exponent(hd: HodgeDiamond, n: int) -> int:
    """sum_{0<=i<=d, 0<=j<=n} (-1)^(i+j) (n-j) h^i(Omega^j); zero for n < 0."""
    return sum(
        (-1) ** (i + j) * (n - j) * hd.at(i, j)
        for i in range(hd.d + 1)
        for j in range(min(n, hd.d) + 1)
    )


def truncated_de_rham_exponent(hd: HodgeDiamond, j: int) -> int:
    """log_p of the Euler characteristic of the de Rham complex truncated to Omega^{<=j}.

    Uses the degenerate Hodge-de Rham spectral sequence: sum_i (-1)^i sum_{a+b=i, b<=j} h^a(Omega^b).
    """
    total = 0
    for i in range(2 * hd.d + 1):
        total += (-1) ** i * sum(hd.at(a, i - a) for a in range(i + 1) if i - a <= j)
    return total


def nygaard_quotient_exponent(hd: HodgeDiamond, n: int) -> int:
    """Sum of the graded layers j = 0..n-1 of W Omega / N^{>=n}; 0 when n <= 0."""
    return sum(truncated_de_rham_exponent(hd, j) for j in range(max(n, 0)))
