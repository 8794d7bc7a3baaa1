"""Zeta-level devissage: decompositions, blowup squares, compactly supported values, property P.

The sheaf-theoretic side (cdh/eh descent) is what justifies these moves; here
only its zeta-level shadow is computed.  Property P is tracked as
derivability over scheme ids, not verified numerically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import (
    BlowupSquareInstance,
    CompactificationTriple,
    compactifications,
    is_registered_decomposition,
    registered_squares,
    registered_triples,
)
from .errors import ArgumentError, ConsistencyError, FpZetaError, PreconditionError
from .schemes import (
    DEFAULT_CONFIG,
    CountConfig,
    GroundField,
    OpenComplement,
    Scheme,
    count_series,
)
from .special_values import SpecialValueReport, fraction_str, special_value, verify_milne
from .zeta import ZetaRational, degree_bounds, zeta_from_counts, zeta_of

DESCENT_NOTE = "descent for eh/cdh sheaves justifies these identities; only their zeta-level shadow is computed"
DERIVABILITY_NOTE = "the ledger tracks derivability of property P over scheme ids, not a numerical verification"
EMPTY_ID = "empty"


def _p(field: GroundField | int) -> int:
    return field.p if isinstance(field, GroundField) else GroundField(field).p


def _zeta_at_least(X: Scheme, p: int, K: int, config: CountConfig) -> tuple[ZetaRational, int]:
    a, b = degree_bounds(X, p, config)
    K_used = max(K, a + b + 1)
    return zeta_from_counts(count_series(X, p, K_used, config), a, b), K_used


@dataclass(frozen=True)
class DecomposeReport:
    x: str
    z: str
    u: str
    zeta_x: ZetaRational
    zeta_z: ZetaRational
    zeta_u: ZetaRational
    counts_additive: bool
    K_used: int

    @property
    def holds(self) -> bool:
        return self.counts_additive and self.zeta_x == self.zeta_z * self.zeta_u

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "z": self.z,
            "u": self.u,
            "zeta_x": self.zeta_x.to_json(),
            "zeta_z": self.zeta_z.to_json(),
            "zeta_u": self.zeta_u.to_json(),
            "counts_additive": self.counts_additive,
            "K_used": self.K_used,
            "holds": self.holds,
            "note": DESCENT_NOTE,
        }


def decompose_check(
    x: Scheme, z: Scheme, field: GroundField | int, K: int, config: CountConfig = DEFAULT_CONFIG
) -> DecomposeReport:
    """zeta(X) = zeta(Z) zeta(X \\ Z), each side rebuilt from its own counts.

    Each zeta is reconstructed from max(K, its degree bound + 1) counts, and
    N_k(X) = N_k(Z) + N_k(U) is checked for k <= K.
    """
    if not is_registered_decomposition(x, z):
        raise PreconditionError(f"({x.name}, {z.name}) is not a registered closed decomposition")
    if K < 1:
        raise ArgumentError("K must be >= 1")
    p = _p(field)
    u = OpenComplement(x, z)
    zx, kx = _zeta_at_least(x, p, K, config)
    zz, kz = _zeta_at_least(z, p, K, config)
    zu, ku = _zeta_at_least(u, p, K, config)
    cx, cz, cu = (count_series(s, p, K, config).counts for s in (x, z, u))
    additive = all(a == b + c for a, b, c in zip(cx, cz, cu))
    return DecomposeReport(x.name, z.name, u.name, zx, zz, zu, additive, max(kx, kz, ku))


# -- blowup squares ----------------------------------------------------------


@dataclass(frozen=True)
class BlowupValueReport:
    square: tuple[str, str, str, str]
    n: int
    lhs: Fraction
    rhs: Fraction
    rho_lhs: int
    rho_rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and self.rho_lhs == self.rho_rhs

    def to_json(self) -> dict:
        return {
            "square": dict(zip(("y_prime", "x_prime", "y", "x"), self.square)),
            "n": self.n,
            "lhs": fraction_str(self.lhs),
            "rhs": fraction_str(self.rhs),
            "rho_lhs": self.rho_lhs,
            "rho_rhs": self.rho_rhs,
            "holds": self.holds,
            "note": DESCENT_NOTE,
        }


def square_counts_ok(sq: BlowupSquareInstance, field: GroundField | int, K: int = 4, config: CountConfig = DEFAULT_CONFIG) -> bool:
    """N_k(X) + N_k(Y') = N_k(X') + N_k(Y) for k <= K."""
    p = _p(field)
    yp, xp, y, x = (count_series(s, p, K, config).counts for s in sq.members)
    return all(a + b == c + d for a, b, c, d in zip(x, yp, xp, y))


def blowup_value_identity(
    sq: BlowupSquareInstance, field: GroundField | int, n: int, config: CountConfig = DEFAULT_CONFIG
) -> BlowupValueReport:
    """C(X,n) C(Y',n) against C(X',n) C(Y,n), exactly, together with the pole orders."""
    p = _p(field)
    if not square_counts_ok(sq, p, config=config):
        raise PreconditionError("square fails the point-count identity N(X) + N(Y') = N(X') + N(Y)")
    yp, xp, y, x = (special_value(zeta_of(s, p, config), p, n) for s in sq.members)
    return BlowupValueReport(
        tuple(s.name for s in sq.members),
        n,
        x.value * yp.value,
        xp.value * y.value,
        x.rho + yp.rho,
        xp.rho + y.rho,
    )


# -- compactly supported values ---------------------------------------------


def _check_triple(tr: CompactificationTriple, p: int, config: CountConfig, K: int = 4) -> None:
    if tr not in compactifications(tr.u):
        raise PreconditionError(f"({tr.x.name}, {tr.z.name}) is not a registered compactification of {tr.u.name}")
    u, x, z = (count_series(s, p, K, config).counts for s in (tr.u, tr.x, tr.z))
    if any(a != b - c for a, b, c in zip(u, x, z)):
        raise ConsistencyError(f"N_k({tr.u.name}) != N_k({tr.x.name}) - N_k({tr.z.name})")


def compactly_supported_zeta(tr: CompactificationTriple, field: GroundField | int, config: CountConfig = DEFAULT_CONFIG) -> ZetaRational:
    p = _p(field)
    _check_triple(tr, p, config)
    return zeta_of(tr.x, p, config) / zeta_of(tr.z, p, config)


def open_value(
    tr: CompactificationTriple, field: GroundField | int, n: int, config: CountConfig = DEFAULT_CONFIG
) -> SpecialValueReport:
    return special_value(compactly_supported_zeta(tr, field, config), _p(field), n)


@dataclass(frozen=True)
class OpenValueComparison:
    u: str
    reports: tuple[tuple[str, SpecialValueReport], ...]

    @property
    def holds(self) -> bool:
        return all(r.to_json() == self.reports[0][1].to_json() for _, r in self.reports)

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "compactifications": [{"x_z": label, "report": r.to_json()} for label, r in self.reports],
            "holds": self.holds,
        }


def compare_compactifications(u: Scheme, field: GroundField | int, n: int, config: CountConfig = DEFAULT_CONFIG) -> OpenValueComparison:
    """open_value across every registered compactification of u; they must all agree."""
    reports = tuple((f"{tr.x.name} - {tr.z.name}", open_value(tr, field, n, config)) for tr in compactifications(u))
    return OpenValueComparison(u.name, reports)


# -- property P --------------------------------------------------------------


@dataclass(frozen=True)
class PropertyPLedger:
    known: frozenset[str]
    squares: tuple[tuple[str, str, str, str], ...] = ()
    triples: tuple[tuple[str, str, str], ...] = ()
    reasons: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        for s in self.squares:
            if len(s) != 4:
                raise ArgumentError("a square constraint has 4 members")
        for t in self.triples:
            if len(t) != 3:
                raise ArgumentError("a triple constraint has 3 members")
        object.__setattr__(self, "known", frozenset(self.known) | {EMPTY_ID})
        object.__setattr__(self, "squares", tuple(tuple(s) for s in self.squares))
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))

    def ids(self) -> set[str]:
        out = set(self.known)
        for c in self.squares + self.triples:
            out.update(c)
        return out

    def to_json(self) -> dict:
        return {
            "known": sorted(self.known),
            "unknown": sorted(self.ids() - self.known),
            "squares": [list(s) for s in sorted(self.squares)],
            "triples": [list(t) for t in sorted(self.triples)],
            "reasons": {k: v for k, v in sorted(self.reasons)},
            "note": DERIVABILITY_NOTE,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PropertyPLedger":
        try:
            return cls(
                frozenset(doc.get("known", [])),
                tuple(tuple(s) for s in doc.get("squares", [])),
                tuple(tuple(t) for t in doc.get("triples", [])),
            )
        except (TypeError, AttributeError) as exc:
            raise ArgumentError(f"malformed ledger document: {exc}") from exc


def propagate_property_p(ledger: PropertyPLedger) -> PropertyPLedger:
    """Least fixpoint: 3 known members of a square give the 4th, 2 of a triple give the 3rd.

    Members are counted with multiplicity, so the square (empty, X^red, empty, X)
    makes X known as soon as X^red is.

    Constraints are visited in sorted order, so the reasons recorded do not
    depend on the order in which they were supplied.
    """
    known = set(ledger.known)
    reasons = dict(ledger.reasons)
    rules = [("square", c, 3) for c in sorted(set(ledger.squares))] + [("triple", c, 2) for c in sorted(set(ledger.triples))]
    changed = True
    while changed:
        changed = False
        for kind, members, need in rules:
            if sum(m in known for m in members) >= need:
                for m in members:
                    if m not in known:
                        known.add(m)
                        reasons[m] = f"{kind} ({', '.join(members)})"
                        changed = True
    return PropertyPLedger(frozenset(known), ledger.squares, ledger.triples, tuple(sorted(reasons.items())))


def shuffled(ledger: PropertyPLedger, rng: random.Random) -> PropertyPLedger:
    """Same constraints, supplied in a random order with members permuted within each constraint."""
    squares = [tuple(rng.sample(s, 4)) for s in ledger.squares]
    triples = [tuple(rng.sample(t, 3)) for t in ledger.triples]
    rng.shuffle(squares)
    rng.shuffle(triples)
    return PropertyPLedger(ledger.known, tuple(squares), tuple(triples))


def catalog_constraints() -> tuple[tuple[tuple[str, ...], ...], tuple[tuple[str, ...], ...]]:
    squares = tuple(tuple(s.name for s in sq.members) for sq in registered_squares())
    triples = tuple((tr.u.name, tr.x.name, tr.z.name) for tr in registered_triples())
    return squares, triples


def seed_ledger(
    candidates: Sequence[Scheme],
    field: GroundField | int,
    n_values: Iterable[int],
    config: CountConfig = DEFAULT_CONFIG,
    squares: Sequence[Sequence[str]] | None = None,
    triples: Sequence[Sequence[str]] | None = None,
) -> PropertyPLedger:
    """Known set = empty plus every candidate whose verify_milne report is consistent at all n."""
    n_values = list(n_values)
    known = {EMPTY_ID}
    for X in candidates:
        try:
            if all(verify_milne(X, field, n, config).consistent for n in n_values):
                known.add(X.name)
        except FpZetaError:
            continue
    sq, tr = catalog_constraints()
    return PropertyPLedger(
        frozenset(known),
        tuple(map(tuple, squares)) if squares is not None else sq,
        tuple(map(tuple, triples)) if triples is not None else tr,
    )
