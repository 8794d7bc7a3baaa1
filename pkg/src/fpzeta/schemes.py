"""Symbolic F_p-schemes and exact point counts N_k = #X(F_{p^k}).

Descriptors are immutable dataclasses.  Combinators (products, disjoint
unions, open complements, thickenings, blowups at a rational point) are
counted through their count identities, never by enumeration.  Leaves are
counted by closed form (points, projective and affine spaces), by a quadratic
character sum (elliptic curves), by Gauss sums (diagonal hypersurfaces) or by
brute-force enumeration within a budget (everything else).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Mapping

import numpy as np

from .errors import ArgumentError, ResourceError, ValidationError
from .finite_field import FIELD_TABLE_LIMIT, get_field
from .gauss_sums import diagonal_projective_count
from .numerics import require_prime

DEFAULT_BUDGET = 10**8
# The Jacobian-criterion search is a heuristic, so it gets a smaller cap than counting.
SINGULAR_SEARCH_LIMIT = 2 * 10**6
_CHUNK = 1 << 18


@dataclass(frozen=True)
class GroundField:
    p: int

    def __post_init__(self):
        require_prime(self.p)


@dataclass(frozen=True)
class CountConfig:
    """Enumeration budget: at most ``budget`` points visited per leaf count."""

    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.budget <= 0:
            raise ArgumentError("budget must be positive")


DEFAULT_CONFIG = CountConfig()


# ---------------------------------------------------------------------------
# descriptors


class Scheme:
    """Base class of all descriptors."""

    @property
    def name(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Empty(Scheme):
    @property
    def name(self) -> str:
        return "empty"


@dataclass(frozen=True)
class Point(Scheme):
    @property
    def name(self) -> str:
        return "pt"


@dataclass(frozen=True)
class ProjectiveSpace(Scheme):
    N: int

    def __post_init__(self):
        if self.N < 0:
            raise ArgumentError("projective dimension must be >= 0")

    @property
    def name(self) -> str:
        return f"P{self.N}"


@dataclass(frozen=True)
class AffineSpace(Scheme):
    N: int

    def __post_init__(self):
        if self.N < 0:
            raise ArgumentError("affine dimension must be >= 0")

    @property
    def name(self) -> str:
        return f"A{self.N}"


Monomial = tuple[int, ...]


@dataclass(frozen=True)
class ProjectiveHypersurface(Scheme):
    """Zero locus of a homogeneous F in N+1 variables.

    ``terms`` is a sorted tuple of (exponent tuple, integer coefficient).
    """

    N: int
    terms: tuple[tuple[Monomial, int], ...]
    label: str = ""
    assert_smooth: bool = True

    def __post_init__(self):
        if self.N < 1:
            raise ArgumentError("hypersurface needs ambient dimension >= 1")
        terms = tuple(sorted((tuple(e), int(c)) for e, c in self.terms if c != 0))
        if not terms:
            raise ArgumentError("zero polynomial does not define a hypersurface")
        degs = {sum(e) for e, _ in terms}
        if len(degs) != 1 or any(len(e) != self.N + 1 for e, _ in terms):
            raise ArgumentError("F must be homogeneous in N+1 variables")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_map(cls, N: int, F: Mapping[Monomial, int], label: str = "", assert_smooth: bool = True):
        return cls(N, tuple(F.items()), label, assert_smooth)

    @property
    def degree(self) -> int:
        return sum(self.terms[0][0])

    def diagonal_coefficients(self) -> list[int] | None:
        """Coefficients a_i when F = sum a_i x_i^d, else None."""
        d = self.degree
        coeffs = [0] * (self.N + 1)
        for e, c in self.terms:
            nz = [i for i, x in enumerate(e) if x]
            if len(nz) != 1 or e[nz[0]] != d:
                return None
            coeffs[nz[0]] = c
        return coeffs if all(coeffs) else None

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        body = "+".join(f"{c}*" + "".join(f"x{i}^{x}" for i, x in enumerate(e) if x) for e, c in self.terms)
        return f"V({body})"


def fermat(N: int, d: int, label: str = "") -> ProjectiveHypersurface:
    terms = {tuple(d if j == i else 0 for j in range(N + 1)): 1 for i in range(N + 1)}
    return ProjectiveHypersurface.from_map(N, terms, label or f"fermat:{N},{d}")


@dataclass(frozen=True)
class EllipticCurve(Scheme):
    """y^2 = x^3 + a x + b."""

    a: int
    b: int

    @property
    def name(self) -> str:
        return f"E:{self.a},{self.b}"

    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)


@dataclass(frozen=True)
class Product(Scheme):
    left: Scheme
    right: Scheme

    @property
    def name(self) -> str:
        return f"({self.left.name}*{self.right.name})"


@dataclass(frozen=True)
class DisjointUnion(Scheme):
    left: Scheme
    right: Scheme

    @property
    def name(self) -> str:
        return f"({self.left.name}|{self.right.name})"


@dataclass(frozen=True)
class OpenComplement(Scheme):
    ambient: Scheme
    closed: Scheme
    label: str = ""

    @property
    def name(self) -> str:
        return self.label or f"({self.ambient.name}-{self.closed.name})"


@dataclass(frozen=True)
class Thickening(Scheme):
    """A nilpotent thickening; shares every point count with ``reduced``."""

    reduced: Scheme
    label: str = ""

    @property
    def name(self) -> str:
        return self.label or f"thick({self.reduced.name})"


@dataclass(frozen=True)
class BlowupAtRationalPoint(Scheme):
    """Blowup of a smooth ``base`` at an F_p-point; the exceptional divisor is P^(d-1)."""

    base: Scheme

    @property
    def name(self) -> str:
        return f"Bl:{self.base.name}"


# ---------------------------------------------------------------------------
# structural data


def dimension(X: Scheme) -> int:
    match X:
        case Empty():
            return -1
        case Point():
            return 0
        case ProjectiveSpace(N) | AffineSpace(N):
            return N
        case ProjectiveHypersurface():
            return X.N - 1
        case EllipticCurve():
            return 1
        case Product(l, r):
            return dimension(l) + dimension(r) if dimension(l) >= 0 and dimension(r) >= 0 else -1
        case DisjointUnion(l, r):
            return max(dimension(l), dimension(r))
        case OpenComplement(amb, _, _):
            return dimension(amb)
        case Thickening(red, _):
            return dimension(red)
        case BlowupAtRationalPoint(base):
            return dimension(base)
    raise ArgumentError(f"unknown descriptor {X!r}")


def children(X: Scheme) -> list[Scheme]:
    match X:
        case Product(l, r) | DisjointUnion(l, r):
            return [l, r]
        case OpenComplement(a, c, _):
            return [a, c]
        case Thickening(r, _):
            return [r]
        case BlowupAtRationalPoint(b):
            return [b]
    return []


@dataclass(frozen=True)
class Smoothness:
    smooth: bool
    certified: bool
    note: str = ""


def smoothness(X: Scheme, p: int, config: CountConfig = DEFAULT_CONFIG) -> Smoothness:
    """Smooth-and-proper status of X over F_p.

    Catalog leaves are certified exactly; user hypersurfaces get the Jacobian
    criterion over F_{p^k}, k <= 4 within budget, which is only a heuristic.
    """
    match X:
        case Empty() | Point() | ProjectiveSpace():
            return Smoothness(True, True)
        case AffineSpace(N):
            return Smoothness(N == 0, True, "" if N == 0 else "not proper")
        case EllipticCurve():
            ok = p != 2 and X.discriminant() % p != 0
            return Smoothness(ok, True, "" if ok else "singular Weierstrass model")
        case ProjectiveHypersurface():
            diag = X.diagonal_coefficients()
            if diag is not None and X.degree % p != 0 and all(c % p for c in diag):
                return Smoothness(True, True, "diagonal with p not dividing degree")
            sing, checked = _singular_point_search(X, p, config.budget)
            if sing:
                return Smoothness(False, True, f"singular point over F_{p}^{sing}")
            return Smoothness(True, False, f"Jacobian criterion checked over F_{p}^k for k in {checked}")
        case Product(l, r) | DisjointUnion(l, r):
            a, b = smoothness(l, p, config), smoothness(r, p, config)
            return Smoothness(a.smooth and b.smooth, a.certified and b.certified, "; ".join(filter(None, [a.note, b.note])))
        case BlowupAtRationalPoint(base):
            s = smoothness(base, p, config)
            return Smoothness(s.smooth, s.certified, s.note)
        case OpenComplement():
            return Smoothness(False, True, "open complement is not proper")
        case Thickening():
            return Smoothness(False, True, "non-reduced")
    raise ArgumentError(f"unknown descriptor {X!r}")


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class PointCountSeries:
    field: GroundField
    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.counts)


def count_points(X: Scheme, field: GroundField | int, k: int, config: CountConfig = DEFAULT_CONFIG) -> int:
    p = field.p if isinstance(field, GroundField) else require_prime(field)
    if k < 1:
        raise ArgumentError("extension degree k must be >= 1")
    return _count(X, p, k, config.budget)


def count_series(X: Scheme, field: GroundField | int, K: int, config: CountConfig = DEFAULT_CONFIG) -> PointCountSeries:
    gf = field if isinstance(field, GroundField) else GroundField(field)
    if K < 1:
        raise ArgumentError("series length must be >= 1")
    return PointCountSeries(gf, tuple(_count(X, gf.p, k, config.budget) for k in range(1, K + 1)))


@lru_cache(maxsize=4096)
def _count(X: Scheme, p: int, k: int, budget: int) -> int:
    q = p**k
    match X:
        case Empty():
            return 0
        case Point():
            return 1
        case ProjectiveSpace(N):
            return sum(q**i for i in range(N + 1))
        case AffineSpace(N):
            return q**N
        case EllipticCurve():
            return _count_elliptic(X, p, k, budget)
        case ProjectiveHypersurface():
            return _count_hypersurface(X, p, k, budget)
        case Product(l, r):
            return _count(l, p, k, budget) * _count(r, p, k, budget)
        case DisjointUnion(l, r):
            return _count(l, p, k, budget) + _count(r, p, k, budget)
        case OpenComplement(amb, closed, _):
            n = _count(amb, p, k, budget) - _count(closed, p, k, budget)
            if n < 0:
                raise ValidationError(f"{X.name}: closed part has more points than the ambient scheme")
            return n
        case Thickening(red, _):
            return _count(red, p, k, budget)
        case BlowupAtRationalPoint(base):
            d = dimension(base)
            if d < 1:
                raise ValidationError(f"{X.name}: blowup needs a base of positive dimension")
            if _count(base, p, 1, budget) < 1:
                raise ValidationError(f"{X.name}: base has no F_{p}-rational point")
            return _count(base, p, k, budget) + _count(ProjectiveSpace(d - 1), p, k, budget) - 1
    raise ArgumentError(f"unknown descriptor {X!r}")


def _check_budget(X: Scheme, q: int, nvars: int, budget: int) -> None:
    if q**nvars > budget:
        raise ResourceError(f"counting {X.name} needs {q}^{nvars} evaluations, over budget {budget}")
    if q > FIELD_TABLE_LIMIT:
        raise ResourceError(f"counting {X.name} needs tables for a field of {q} elements, over the limit {FIELD_TABLE_LIMIT}")


def _count_elliptic(E: EllipticCurve, p: int, k: int, budget: int) -> int:
    if p == 2 or E.discriminant() % p == 0:
        raise ValidationError(f"{E.name} is singular over F_{p}")
    q = p**k
    _check_budget(E, q, 1, budget)
    F = get_field(p, k)
    x = F.elements()
    rhs = F.add(F.add(F.power(x, 3), F.mul(F.from_int(E.a), x)), np.full(q, F.from_int(E.b)))
    return q + 1 + int(F.quadratic_character(rhs).sum())


def _eval_terms(F, terms, coords) -> np.ndarray:
    total = np.zeros(coords[0].shape, dtype=np.int64)
    for exps, c in terms:
        val = np.full(coords[0].shape, F.from_int(c), dtype=np.int64)
        for xi, e in zip(coords, exps):
            if e:
                val = F.mul(val, F.power(xi, e))
        total = F.add(total, val)
    return total


def _affine_zero_count(F, nvars: int, polys: list) -> int:
    """Points of F_q^nvars where every polynomial in ``polys`` vanishes."""
    q = F.q
    total = q**nvars
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        coords = [(idx // q**i) % q for i in range(nvars)]
        mask = np.ones(idx.shape, dtype=bool)
        for terms in polys:
            if not terms:
                continue
            mask &= _eval_terms(F, terms, coords) == 0
        count += int(mask.sum())
    return count


def _count_hypersurface(X: ProjectiveHypersurface, p: int, k: int, budget: int) -> int:
    diag = X.diagonal_coefficients()
    if diag is not None and X.degree % p != 0 and all(c % p for c in diag):
        return diagonal_projective_count(diag, X.degree, p, k)
    q = p**k
    _check_budget(X, q, X.N + 1, budget)
    if X.assert_smooth:
        sing, _ = _singular_point_search(X, p, budget)
        if sing:
            raise ValidationError(f"{X.name} has a singular point over F_{p}^{sing}")
    aff = _affine_zero_count(get_field(p, k), X.N + 1, [X.terms])
    return (aff - 1) // (q - 1)


def _partials(X: ProjectiveHypersurface, p: int) -> list[list]:
    out = []
    for i in range(X.N + 1):
        d = []
        for e, c in X.terms:
            if e[i] and (c * e[i]) % p:
                ne = list(e)
                ne[i] -= 1
                d.append((tuple(ne), c * e[i]))
        out.append(d)
    return out


@lru_cache(maxsize=256)
def _singular_point_search(X: ProjectiveHypersurface, p: int, budget: int) -> tuple[int, tuple[int, ...]]:
    """(k of the first singular point found or 0, extension degrees checked)."""
    checked = []
    parts = _partials(X, p)
    for k in range(1, 5):
        q = p**k
        if q ** (X.N + 1) > min(budget, SINGULAR_SEARCH_LIMIT) or q > FIELD_TABLE_LIMIT:
            break
        F = get_field(p, k)
        # a partial vanishing identically mod p imposes no condition
        polys = [X.terms] + [d for d in parts if d]
        if _affine_zero_count(F, X.N + 1, polys) > 1:
            return k, tuple(checked)
        checked.append(k)
    return 0, tuple(checked)


# ---------------------------------------------------------------------------
# JSON


def to_json(X: Scheme) -> dict[str, Any]:
    match X:
        case Empty():
            return {"variant": "Empty"}
        case Point():
            return {"variant": "Point"}
        case ProjectiveSpace(N):
            return {"variant": "ProjectiveSpace", "N": N}
        case AffineSpace(N):
            return {"variant": "AffineSpace", "N": N}
        case ProjectiveHypersurface():
            return {
                "variant": "ProjectiveHypersurface",
                "N": X.N,
                "F": {",".join(map(str, e)): c for e, c in X.terms},
                "label": X.label,
                "assert_smooth": X.assert_smooth,
            }
        case EllipticCurve(a, b):
            return {"variant": "EllipticCurve", "a": a, "b": b}
        case Product(l, r):
            return {"variant": "Product", "left": to_json(l), "right": to_json(r)}
        case DisjointUnion(l, r):
            return {"variant": "DisjointUnion", "left": to_json(l), "right": to_json(r)}
        case OpenComplement(a, c, label):
            return {"variant": "OpenComplement", "ambient": to_json(a), "closed": to_json(c), "label": label}
        case Thickening(r, label):
            return {"variant": "Thickening", "reduced": to_json(r), "label": label}
        case BlowupAtRationalPoint(b):
            return {"variant": "BlowupAtRationalPoint", "base": to_json(b)}
    raise ArgumentError(f"unknown descriptor {X!r}")


def from_json(doc: Mapping[str, Any]) -> Scheme:
    try:
        v = doc["variant"]
        if v == "Empty":
            return Empty()
        if v == "Point":
            return Point()
        if v == "ProjectiveSpace":
            return ProjectiveSpace(int(doc["N"]))
        if v == "AffineSpace":
            return AffineSpace(int(doc["N"]))
        if v == "ProjectiveHypersurface":
            F = {tuple(int(x) for x in key.split(",")): int(c) for key, c in doc["F"].items()}
            return ProjectiveHypersurface.from_map(int(doc["N"]), F, doc.get("label", ""), bool(doc.get("assert_smooth", True)))
        if v == "EllipticCurve":
            return EllipticCurve(int(doc["a"]), int(doc["b"]))
        if v == "Product":
            return Product(from_json(doc["left"]), from_json(doc["right"]))
        if v == "DisjointUnion":
            return DisjointUnion(from_json(doc["left"]), from_json(doc["right"]))
        if v == "OpenComplement":
            return OpenComplement(from_json(doc["ambient"]), from_json(doc["closed"]), doc.get("label", ""))
        if v == "Thickening":
            return Thickening(from_json(doc["reduced"]), doc.get("label", ""))
        if v == "BlowupAtRationalPoint":
            return BlowupAtRationalPoint(from_json(doc["base"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ArgumentError(f"malformed scheme document: {exc}") from exc
    raise ArgumentError(f"unknown variant {doc.get('variant')!r}")


def dumps(X: Scheme) -> str:
    return json.dumps(to_json(X), sort_keys=True)
