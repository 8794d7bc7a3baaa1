"""Exact arithmetic: p-adic valuations, integer polynomials, Smith normal form.

Rationals are :class:`fractions.Fraction` throughout (always reduced, positive
denominator, zero is ``0/1``).  Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import ArgumentError, DomainError

Rational = Union[int, Fraction]
Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# primes and valuations

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ArgumentError(f"{p!r} is not a prime")
    return p


def valuation(x: Rational, p: int) -> int:
    """Exponent v with x = p^v * (p-adic unit); so |x|_p = p^(-v)."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        raise DomainError("valuation of zero is undefined")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def prime_to_p_part(x: Rational, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** valuation(x, p)


# ---------------------------------------------------------------------------
# polynomials

def _trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if not c:
        c = [0]
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first.

    No trailing zeros except for the zero polynomial ``(0,)``.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = (0,)):
        c = _trim(coeffs)
        for a in c:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ArgumentError(f"non-integer coefficient {a}")
            elif not isinstance(a, int):
                raise ArgumentError(f"non-integer coefficient {a!r}")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def linear_factor(cls, root_inverse: int) -> "IntPolynomial":
        """The polynomial 1 - a*t."""
        return cls((1, -root_inverse))

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        return IntPolynomial(poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        if e < 0:
            raise ArgumentError("negative polynomial power")
        out = IntPolynomial.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive_part(self) -> "IntPolynomial":
        c = self.content()
        if c == 0:
            return self
        # sign normalized so the lowest nonzero coefficient is positive
        lead = next(a for a in self.coeffs if a != 0)
        s = 1 if lead > 0 else -1
        return IntPolynomial(s * a // c for a in self.coeffs)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial | None":
        """Quotient if ``other`` divides ``self`` in Z[t], else None."""
        q, r = qpoly_divmod(self.coeffs, other.coeffs)
        if any(r):
            return None
        if any(Fraction(a).denominator != 1 for a in q):
            return None
        return IntPolynomial(int(a) for a in q)

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(reversed(self.coeffs))

    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "IntPolynomial":
        return cls(int(a) for a in data)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(a)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("-" if a < 0 else "+", body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# Rational polynomial helpers on plain coefficient lists (lowest degree first).

def qpoly_trim(a: Sequence) -> list:
    return list(_trim(a))


def qpoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in qpoly_trim(a)]
    b = [Fraction(x) for x in qpoly_trim(b)]
    if b == [0]:
        raise DomainError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    r = qpoly_trim(a[: len(b) - 1] or [0])
    return qpoly_trim(q), r


def qpoly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q (``[1]`` when coprime)."""
    a, b = qpoly_trim(a), qpoly_trim(b)
    while b != [0]:
        _, r = qpoly_divmod(a, b)
        a, b = b, r
    if a == [0]:
        return a
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def qpoly_derivative(a: Sequence) -> list:
    return qpoly_trim([i * a[i] for i in range(1, len(a))] or [0])


def to_primitive_int(a: Sequence) -> IntPolynomial:
    """Scale a rational polynomial to a primitive integer one."""
    a = [Fraction(x) for x in qpoly_trim(a)]
    den = reduce(lambda x, y: x * y // gcd(x, y), (x.denominator for x in a), 1)
    return IntPolynomial(int(x * den) for x in a).primitive_part()


def squarefree_decomposition(P: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm over Q: P = c * prod S_j^j with S_j squarefree, pairwise coprime.

    Returned factors are primitive integer polynomials; constants are dropped.
    """
    if P.is_zero():
        raise DomainError("squarefree decomposition of zero")
    if P.degree <= 0:
        return []
    f = [Fraction(x) for x in P.coeffs]
    df = qpoly_derivative(f)
    a = qpoly_gcd(f, df)
    b, _ = qpoly_divmod(f, a)
    c, _ = qpoly_divmod(df, a)
    out = []
    j = 1
    while len(qpoly_trim(b)) > 1:
        db = qpoly_derivative(b)
        d = [x - y for x, y in _zip_pad(c, db)]
        g = qpoly_gcd(b, d)
        if len(g) > 1:
            out.append((to_primitive_int(g), j))
        b, _ = qpoly_divmod(b, g)
        c, _ = qpoly_divmod(d, g)
        j += 1
    return out


def _zip_pad(a: Sequence, b: Sequence):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def pole_factor(p: int, n: int) -> IntPolynomial:
    """Primitive integer form of 1 - p^n t (for n < 0 this is p^|n| - t)."""
    if n >= 0:
        return IntPolynomial((1, -(p ** n)))
    return IntPolynomial((p ** (-n), -1))


def divide_out_factor(P: IntPolynomial, p: int, n: int) -> tuple[int, IntPolynomial]:
    """Strip every factor 1 - p^n t from P.

    Returns (m, Q) with P = (1 - p^n t)^m * Q up to the unit scaling of the
    primitive divisor, and Q(p^-n) != 0.
    """
    require_prime(p)
    if P.is_zero():
        raise DomainError("cannot divide the zero polynomial")
    D = pole_factor(p, n)
    m = 0
    Q = P
    while True:
        nxt = Q.exact_div(D)
        if nxt is None:
            break
        Q = nxt
        m += 1
    return m, Q


def strip_and_evaluate(P: IntPolynomial, p: int, n: int) -> tuple[int, Fraction]:
    """(m, value) where P(t) = (1 - p^n t)^m R(t) and value = R(p^-n), exactly."""
    m, Q = divide_out_factor(P, p, n)
    val = Q(Fraction(p) ** (-n))
    if n < 0:
        # (p^|n| - t) = p^|n| (1 - p^n t): compensate the unit rescaling
        val *= Fraction(p) ** (-n * m)
    return m, val


# ---------------------------------------------------------------------------
# integer and rational matrices

def _check_matrix(M: Sequence[Sequence]) -> tuple[int, int]:
    if not M or not M[0]:
        raise ArgumentError("empty matrix")
    cols = len(M[0])
    if any(len(row) != cols for row in M):
        raise ArgumentError("ragged matrix")
    return len(M), cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(len(B[0]))] for row in A]


def det(M: Sequence[Sequence[Rational]]) -> Rational:
    """Exact determinant. Bareiss fraction-free elimination for integer input."""
    n, c = _check_matrix(M)
    if n != c:
        raise ArgumentError("determinant of a non-square matrix")
    if all(isinstance(x, int) for row in M for x in row):
        A = [list(row) for row in M]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if swap is None:
                    return 0
                A[k], A[swap] = A[swap], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    A = [[Fraction(x) for x in row] for row in M]
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            out = -out
        out *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return out


def nullspace(M: Sequence[Sequence[Rational]]) -> list[list[Fraction]]:
    """Basis of the right kernel over Q (reduced row echelon form)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [[Fraction(x) for x in row] for row in M]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class SnfResult:
    """left @ M @ right == diag, with left and right unimodular."""

    left: Matrix
    diag: Matrix
    right: Matrix

    @property
    def elementary_divisors(self) -> list[int]:
        k = min(len(self.diag), len(self.diag[0]))
        return [self.diag[i][i] for i in range(k)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form by gcd elimination, pivoting on the smallest nonzero entry."""
    rows, cols = _check_matrix(M)
    A = [[int(x) for x in row] for row in M]
    L = identity(rows)
    R = identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        L[dst] = [x + f * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in R:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // piv
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // piv
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the whole remaining block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
    return SnfResult(left=L, diag=A, right=R)
