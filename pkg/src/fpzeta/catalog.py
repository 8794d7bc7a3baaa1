"""Short names for catalog schemes, plus the registered decompositions and squares.

Grammar (loosest binding first)::

    name   := term ("|" term)*          disjoint union
    term   := atom ("*" atom)*          product
    atom   := "empty" | "pt" | "P<N>" | "A<N>" | "Gm" | "dualnum"
            | "E:a,b" | "Eo:a,b" | "K3:quartic" | "fermat:N,d" | "Bl:<atom>"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArgumentError
from .schemes import (
    AffineSpace,
    BlowupAtRationalPoint,
    DisjointUnion,
    EllipticCurve,
    Empty,
    OpenComplement,
    Point,
    Product,
    ProjectiveSpace,
    Scheme,
    Thickening,
    dimension,
    fermat,
)

EMPTY = Empty()
POINT = Point()
TWO_POINTS = DisjointUnion(POINT, POINT)
GM = OpenComplement(ProjectiveSpace(1), TWO_POINTS, "Gm")
DUALNUM = Thickening(POINT, "dualnum")
K3_QUARTIC = fermat(3, 4, "K3:quartic")

CATALOG_HELP: dict[str, str] = {
    "empty": "the empty scheme",
    "pt": "Spec F_p",
    "P<N>": "projective N-space",
    "A<N>": "affine N-space",
    "Gm": "P1 minus {0, infinity}",
    "dualnum": "Spec F_p[x]/(x^2), a thickening of pt",
    "E:a,b": "elliptic curve y^2 = x^3 + a x + b (p odd, discriminant a unit)",
    "Eo:a,b": "E:a,b minus its origin",
    "K3:quartic": "Fermat quartic surface x0^4 + x1^4 + x2^4 + x3^4 in P3",
    "fermat:N,d": "Fermat hypersurface of degree d in P^N",
    "Bl:<X>": "blowup of a smooth proper X at an F_p-point",
    "(X)": "grouping",
    "X*Y": "product",
    "X|Y": "disjoint union",
}

_ATOMS = [
    (re.compile(r"P(\d+)"), lambda m: proj(int(m[1]))),
    (re.compile(r"A(\d+)"), lambda m: AffineSpace(int(m[1]))),
    (re.compile(r"E:(-?\d+),(-?\d+)"), lambda m: EllipticCurve(int(m[1]), int(m[2]))),
    (re.compile(r"Eo:(-?\d+),(-?\d+)"), lambda m: elliptic_minus_origin(int(m[1]), int(m[2]))),
    (re.compile(r"fermat:(\d+),(\d+)"), lambda m: fermat(int(m[1]), int(m[2]))),
]
_FIXED = {"empty": EMPTY, "pt": POINT, "Gm": GM, "dualnum": DUALNUM, "K3:quartic": K3_QUARTIC}


def proj(N: int) -> Scheme:
    """P^N, with P^0 normalized to the point so registry lookups agree."""
    return POINT if N == 0 else ProjectiveSpace(N)


def elliptic_minus_origin(a: int, b: int) -> OpenComplement:
    return OpenComplement(EllipticCurve(a, b), POINT, f"Eo:{a},{b}")


def _atom(s: str) -> Scheme:
    if s in _FIXED:
        return _FIXED[s]
    for rx, build in _ATOMS:
        m = rx.fullmatch(s)
        if m:
            try:
                return build(m)
            except ValueError as exc:
                raise ArgumentError(f"bad scheme {s!r}: {exc}") from exc
    raise ArgumentError(f"unknown scheme {s!r}")


def _blowup(base: Scheme, text: str) -> Scheme:
    if dimension(base) < 1:
        raise ArgumentError(f"cannot blow up {text}: need positive dimension")
    return BlowupAtRationalPoint(base)


_TOKEN = re.compile(r"\s*(\(|\)|\||\*|Bl:|[^()|*\s]+)")


def _tokens(name: str) -> list[str]:
    out, pos = [], 0
    name = name.strip()
    while pos < len(name):
        m = _TOKEN.match(name, pos)
        if not m:
            raise ArgumentError(f"unknown scheme {name!r}")
        out.append(m[1])
        pos = m.end()
    return out


def parse_scheme(name: str) -> Scheme:
    """Grammar: union := product ('|' product)*, product := factor ('*' factor)*,
    factor := atom | '(' union ')' | 'Bl:' factor."""
    toks = _tokens(name)
    if not toks:
        raise ArgumentError("unknown scheme ''")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None or (expected and t != expected):
            raise ArgumentError(f"unknown scheme {name!r}: expected {expected or 'a term'}")
        pos += 1
        return t

    def union():
        X = product()
        while peek() == "|":
            take()
            X = DisjointUnion(X, product())
        return X

    def product():
        X = factor()
        while peek() == "*":
            take()
            X = Product(X, factor())
        return X

    def factor():
        t = take()
        if t == "(":
            X = union()
            take(")")
            return X
        if t == "Bl:":
            start = pos
            base = factor()
            return _blowup(base, "".join(toks[start:pos]))
        if t in (")", "|", "*"):
            raise ArgumentError(f"unknown scheme {name!r}")
        return _atom(t)

    X = union()
    if pos != len(toks):
        raise ArgumentError(f"unknown scheme {name!r}: trailing {toks[pos]!r}")
    return X


# -- registries -------------------------------------------------------------


@dataclass(frozen=True)
class CompactificationTriple:
    """U open in the proper X with closed complement Z."""

    u: Scheme
    x: Scheme
    z: Scheme


@dataclass(frozen=True)
class BlowupSquareInstance:
    """Y' -> X' over Y -> X, with X' \\ Y' isomorphic to X \\ Y."""

    y_prime: Scheme
    x_prime: Scheme
    y: Scheme
    x: Scheme

    @property
    def members(self) -> tuple[Scheme, Scheme, Scheme, Scheme]:
        return self.y_prime, self.x_prime, self.y, self.x


def compactifications(u: Scheme) -> list[CompactificationTriple]:
    """Registered compactifications of an open catalog scheme (proper U compactifies to itself)."""
    P1 = ProjectiveSpace(1)
    match u:
        case AffineSpace(N) if N >= 1:
            out = [CompactificationTriple(u, proj(N), proj(N - 1))]
            if N == 2:
                out.append(CompactificationTriple(u, Product(P1, P1), DisjointUnion(P1, AffineSpace(1))))
            return out
        case AffineSpace(0):
            return [CompactificationTriple(u, POINT, EMPTY)]
        case OpenComplement(x, z, _):
            return [CompactificationTriple(u, x, z)]
    return [CompactificationTriple(u, u, EMPTY)]


def blowup_square(x: Scheme) -> BlowupSquareInstance:
    """Blowup of x at a rational point: exceptional divisor P^(d-1) over the point."""
    d = dimension(x)
    if d < 1:
        raise ArgumentError(f"cannot blow up {x.name}")
    return BlowupSquareInstance(proj(d - 1), BlowupAtRationalPoint(x), POINT, x)


def thickening_square(x: Thickening) -> BlowupSquareInstance:
    """X^red -> X is a closed immersion that is an isomorphism off the empty set."""
    return BlowupSquareInstance(EMPTY, x.reduced, EMPTY, x)


def registered_squares() -> list[BlowupSquareInstance]:
    return [blowup_square(ProjectiveSpace(2)), blowup_square(ProjectiveSpace(3)), thickening_square(DUALNUM)]


def union_triple(left: Scheme, right: Scheme) -> CompactificationTriple:
    """right is open and closed in left | right, with complement left."""
    return CompactificationTriple(right, DisjointUnion(left, right), left)


def registered_triples() -> list[CompactificationTriple]:
    out = []
    for u in (AffineSpace(1), AffineSpace(2), GM):
        out.extend(compactifications(u))
    out.append(union_triple(POINT, POINT))
    out.append(union_triple(ProjectiveSpace(1), AffineSpace(1)))
    return out


def registered_decompositions() -> set[tuple[Scheme, Scheme]]:
    pairs = {(t.x, t.z) for t in registered_triples()}
    for sq in registered_squares():
        pairs.add((sq.x, sq.y))
        pairs.add((sq.x_prime, sq.y_prime))
    return pairs


def is_registered_decomposition(x: Scheme, z: Scheme) -> bool:
    """Catalog pairs, the trivial pair (x, empty), an elliptic curve with its origin, and P^N over P^(N-1)."""
    if isinstance(z, Empty) or (x, z) in registered_decompositions():
        return True
    if isinstance(x, EllipticCurve) and z == POINT:
        return True
    return isinstance(x, ProjectiveSpace) and x.N >= 1 and z == proj(x.N - 1)


def round_trip_names(p: int) -> list[str]:
    """Catalog names whose zetas are cheap to reconstruct over F_p."""
    names = ["empty", "pt", "P1", "P2", "P3", "A1", "A2", "Gm", "dualnum", "P1*P1", "P1|pt", "Bl:P2"]
    if p != 3:
        names.append("fermat:2,3")
    if p != 2:
        e = next(f"E:{a},{b}" for a in range(p) for b in range(p) if (4 * a**3 + 27 * b**2) % p)
        names += [e, "Eo:" + e[2:]]
        if p <= 5:
            names.append("P1*" + e)
        names.append("K3:quartic")
    return names
