"""Zeta functions as exact rational functions in t, rebuilt from point counts.

Z(X, t) = exp(sum_k N_k t^k / k).  Reconstruction is an exact Pade solve on
the series coefficients; no floating point reaches a returned value.  The
weight factorization uses double-precision roots only to decide which
cohomological degree each factor belongs to, then re-derives the factors as
integer polynomials and checks exact division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from .errors import ArgumentError, ConsistencyError, FactorizationError, ValidationError
from .numerics import (
    IntPolynomial,
    divide_out_factor,
    nullspace,
    poly_mul,
    qpoly_divmod,
    qpoly_gcd,
    require_prime,
    squarefree_decomposition,
    to_primitive_int,
)
from .schemes import (
    AffineSpace,
    BlowupAtRationalPoint,
    CountConfig,
    DEFAULT_CONFIG,
    DisjointUnion,
    Empty,
    OpenComplement,
    PointCountSeries,
    Product,
    Scheme,
    Thickening,
    count_series,
    dimension,
    smoothness,
)

CLUSTER_TOL = 1e-6
WEIL_TOL = 1e-9


@dataclass(frozen=True)
class ZetaRational:
    """Z(t) = num / den with num(0) = den(0) = 1 and gcd(num, den) = 1."""

    num: IntPolynomial
    den: IntPolynomial

    def __post_init__(self):
        if self.num[0] != 1 or self.den[0] != 1:
            raise ValidationError("zeta numerator and denominator must have constant term 1")
        if len(qpoly_gcd(self.num.coeffs, self.den.coeffs)) > 1:
            raise ValidationError("zeta numerator and denominator must be coprime")

    @classmethod
    def reduced(cls, num: Sequence, den: Sequence) -> "ZetaRational":
        """Cancel common factors of a rational pair and normalize constants to 1."""
        g = qpoly_gcd(num, den)
        n, _ = qpoly_divmod(num, g)
        d, _ = qpoly_divmod(den, g)
        if Fraction(d[0]) == 0 or Fraction(n[0]) == 0:
            raise ValidationError("rational function is not a unit at t = 0")
        n = [Fraction(x) / Fraction(n[0]) for x in n]
        d = [Fraction(x) / Fraction(d[0]) for x in d]
        if any(x.denominator != 1 for x in n + d):
            raise ValidationError("reduced zeta has non-integral coefficients")
        return cls(IntPolynomial(int(x) for x in n), IntPolynomial(int(x) for x in d))

    def __mul__(self, other: "ZetaRational") -> "ZetaRational":
        return ZetaRational.reduced(poly_mul(self.num.coeffs, other.num.coeffs), poly_mul(self.den.coeffs, other.den.coeffs))

    def __truediv__(self, other: "ZetaRational") -> "ZetaRational":
        return ZetaRational.reduced(poly_mul(self.num.coeffs, other.den.coeffs), poly_mul(self.den.coeffs, other.num.coeffs))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> "ZetaRational":
        return cls(IntPolynomial.from_json(doc["num"]), IntPolynomial.from_json(doc["den"]))

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


ONE = ZetaRational(IntPolynomial.one(), IntPolynomial.one())


# ---------------------------------------------------------------------------
# series


def exp_series(counts: Sequence[int]) -> list[Fraction]:
    """Coefficients c_0..c_K of exp(sum N_k t^k / k), via n c_n = sum N_k c_{n-k}."""
    K = len(counts)
    c = [Fraction(1)] + [Fraction(0)] * K
    for n in range(1, K + 1):
        c[n] = sum(counts[k - 1] * c[n - k] for k in range(1, n + 1)) / n
    return c


def _series_inverse(a: Sequence[int], K: int) -> list[int]:
    """Power series 1/a mod t^(K+1) for a(0) = 1."""
    inv = [0] * (K + 1)
    inv[0] = 1
    for n in range(1, K + 1):
        inv[n] = -sum(a[i] * inv[n - i] for i in range(1, min(n, len(a) - 1) + 1))
    return inv


def _log_derivative(a: IntPolynomial, K: int) -> list[int]:
    """Coefficients of t a'(t)/a(t) for t^1..t^K."""
    inv = _series_inverse(a.coeffs, K)
    ta = [i * a[i] for i in range(len(a.coeffs))]
    out = []
    for k in range(1, K + 1):
        out.append(sum(ta[i] * inv[k - i] for i in range(1, min(k, len(ta) - 1) + 1)))
    return out


def series_from_zeta(Z: ZetaRational, K: int) -> list[int]:
    """Recover N_1..N_K as the coefficients of t (log Z)'."""
    if K < 1:
        raise ArgumentError("K must be >= 1")
    a, b = _log_derivative(Z.num, K), _log_derivative(Z.den, K)
    return [x - y for x, y in zip(a, b)]


def zeta_from_counts(series: PointCountSeries | Sequence[int], num_degree_bound: int, den_degree_bound: int) -> ZetaRational:
    """Exact Pade reconstruction of Z(t) with deg num <= num bound, deg den <= den bound."""
    counts = list(series.counts if isinstance(series, PointCountSeries) else series)
    a, b = num_degree_bound, den_degree_bound
    if a < 0 or b < 0:
        raise ArgumentError("degree bounds must be nonnegative")
    if len(counts) < a + b + 1:
        raise ArgumentError(f"need at least {a + b + 1} counts for bounds ({a}, {b}), got {len(counts)}")
    c = exp_series(counts)
    # den coefficients q_0..q_b with sum_i q_i c_{j-i} = 0 for a < j <= a + b
    rows = [[c[j - i] if j - i >= 0 else 0 for i in range(b + 1)] for j in range(a + 1, a + b + 1)]
    q = nullspace(rows)[0] if rows else [Fraction(1)]
    num = [sum(q[i] * c[j - i] for i in range(min(j, b) + 1)) for j in range(a + 1)]
    try:
        Z = ZetaRational.reduced(num, q)
    except ValidationError as exc:
        raise ValidationError(f"no rational function of degrees ({a}, {b}) fits the counts: {exc}") from exc
    if series_from_zeta(Z, len(counts)) != counts:
        raise ValidationError(f"no rational function of degrees ({a}, {b}) fits all {len(counts)} counts")
    return Z


# ---------------------------------------------------------------------------
# degree bounds and catalog zetas


def degree_bounds(X: Scheme, p: int, config: CountConfig = DEFAULT_CONFIG) -> tuple[int, int]:
    """(numerator, denominator) degree bounds from Betti numbers, recursively for combinators."""
    from .hodge import hodge_of

    if isinstance(X, Empty):
        return 0, 0
    s = smoothness(X, p, config)
    if s.smooth:
        b = hodge_of(X).betti()
        return sum(b[1::2]), sum(b[0::2])
    match X:
        case AffineSpace():
            return 0, 1
        case Product(l, r):
            ol, el = degree_bounds(l, p, config)
            orr, er = degree_bounds(r, p, config)
            return el * orr + ol * er, el * er + ol * orr
        case DisjointUnion(l, r):
            ol, el = degree_bounds(l, p, config)
            orr, er = degree_bounds(r, p, config)
            return ol + orr, el + er
        case OpenComplement(amb, closed, _):
            oa, ea = degree_bounds(amb, p, config)
            oc, ec = degree_bounds(closed, p, config)
            return oa + ec, ea + oc
        case Thickening(red, _):
            return degree_bounds(red, p, config)
        case BlowupAtRationalPoint(base):
            o, e = degree_bounds(base, p, config)
            return o, e + dimension(base) - 1
    raise ValidationError(f"no degree bounds for {X.name}; supply them explicitly")


@lru_cache(maxsize=1024)
def zeta_of(X: Scheme, p: int, config: CountConfig = DEFAULT_CONFIG) -> ZetaRational:
    if isinstance(X, Empty):
        return ONE
    a, b = degree_bounds(X, p, config)
    series = count_series(X, p, a + b + 1, config)
    return zeta_from_counts(series, a, b)


# ---------------------------------------------------------------------------
# weight factorization


@dataclass(frozen=True)
class WeilFactorization:
    d: int
    factors: tuple[tuple[int, IntPolynomial], ...]

    def factor(self, i: int) -> IntPolynomial:
        for j, P in self.factors:
            if j == i:
                return P
        return IntPolynomial.one()

    def to_zeta(self) -> ZetaRational:
        num, den = IntPolynomial.one(), IntPolynomial.one()
        for i, P in self.factors:
            if i % 2:
                num = num * P
            else:
                den = den * P
        return ZetaRational.reduced(num.coeffs, den.coeffs)

    def to_json(self) -> dict:
        return {"d": self.d, "factors": {str(i): P.to_json() for i, P in self.factors}}


def _reciprocal_roots(S: IntPolynomial, precise: bool):
    """Roots alpha of t^deg S(1/t), so S(t) = S(0) prod(1 - alpha t).

    Returns (complex approximations, high-precision mpmath roots or None).
    """
    coeffs = list(S.coeffs)  # highest-first for the reversed polynomial
    if precise:
        dps = 30 + 2 * len(str(max(abs(x) for x in coeffs)))
        with mpmath.workdps(dps):
            roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
        return [complex(r) for r in roots], roots
    return [complex(r) for r in np.roots(coeffs)], None


def _weight_of(alpha: complex, p: int) -> int | None:
    mag = abs(alpha)
    if mag == 0:
        return None
    i = round(2 * math.log(mag) / math.log(p))
    target = p ** (i / 2)
    return i if abs(mag - target) / target <= CLUSTER_TOL else None


def _cluster_factor(S: IntPolynomial, p: int, precise: bool) -> dict[int, IntPolynomial]:
    approx, exact = _reciprocal_roots(S, precise)
    groups: dict[int, list[int]] = {}
    for idx, alpha in enumerate(approx):
        w = _weight_of(alpha, p)
        if w is None:
            raise FactorizationError(f"reciprocal root {alpha} of {S} has no Weil weight for p={p}")
        groups.setdefault(w, []).append(idx)
    out = {}
    for w, idxs in groups.items():
        if exact is not None:
            with mpmath.workdps(mpmath.mp.dps + 40):
                coeffs = [mpmath.mpc(1)]
                for i in idxs:
                    coeffs = [a - exact[i] * b for a, b in zip(coeffs + [0], [0] + coeffs)]
                ints = [int(mpmath.nint(mpmath.re(c))) for c in coeffs]
        else:
            coeffs = np.array([1.0 + 0j])
            for i in idxs:
                coeffs = np.convolve(coeffs, np.array([1.0, -approx[i]]))
            ints = [int(round(c.real)) for c in coeffs]
        out[w] = IntPolynomial(ints)  # coefficients of prod(1 - alpha t), lowest first
    return out


def weight_factorization(Z: ZetaRational, p: int, d: int) -> WeilFactorization:
    """Split Z into integer P_i(t) = det(1 - Frob t | H^i) grouped by |alpha| = p^(i/2)."""
    require_prime(p)
    factors: dict[int, IntPolynomial] = {}
    for poly, parity in ((Z.num, 1), (Z.den, 0)):
        if poly.degree <= 0:
            continue
        for S, mult in squarefree_decomposition(poly):
            S = S if S[0] > 0 else -S
            pieces = None
            for precise in (False, True):
                cand = _cluster_factor(S, p, precise)
                rest = S
                ok = True
                for P in cand.values():
                    rest = rest.exact_div(P) if rest is not None else None
                    if rest is None:
                        ok = False
                        break
                if ok and rest is not None and rest.degree == 0 and abs(rest[0]) == 1:
                    pieces = cand
                    break
            if pieces is None:
                raise ConsistencyError(f"clustered factors of {S} do not divide it exactly")
            for w, P in pieces.items():
                if w % 2 != parity:
                    side = "numerator" if parity else "denominator"
                    raise FactorizationError(f"weight {w} root found in the {side}")
                if not 0 <= w <= 2 * d:
                    raise FactorizationError(f"weight {w} outside 0..{2 * d}")
                factors[w] = factors.get(w, IntPolynomial.one()) * P**mult
    f = WeilFactorization(d, tuple(sorted(factors.items())))
    if f.to_zeta() != Z:
        raise ConsistencyError("Weil factors do not reproduce Z exactly")
    return f


@dataclass
class WeilBoundReport:
    p: int
    deviations: dict[int, float] = field(default_factory=dict)
    tolerance: float = WEIL_TOL

    @property
    def passed(self) -> bool:
        return all(dev <= self.tolerance for dev in self.deviations.values())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "tolerance": self.tolerance,
            "max_relative_deviation": {str(i): float(f"{v:.3e}") for i, v in sorted(self.deviations.items())},
            "holds": self.passed,
        }


def weil_bound_check(f: WeilFactorization, p: int, tol: float = WEIL_TOL) -> WeilBoundReport:
    """Max relative deviation of |alpha| from p^(i/2) over the roots of each P_i."""
    report = WeilBoundReport(p, tolerance=tol)
    for i, P in f.factors:
        if P.degree <= 0:
            report.deviations[i] = 0.0
            continue
        target = p ** (i / 2)
        worst = 0.0
        for S, _ in squarefree_decomposition(P):
            for alpha in np.roots(list(S.coeffs)):
                worst = max(worst, abs(abs(alpha) - target) / target)
        report.deviations[i] = worst
    return report


def multiplicity_at(Z_factor: IntPolynomial, p: int, n: int) -> int:
    return divide_out_factor(Z_factor, p, n)[0]
