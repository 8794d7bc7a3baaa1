"""Lattice index bookkeeping: |det F|_p = |Coker(F: L' -> L)|^-1 |L/L'|.

L is the standard lattice Z_p^r, L' is spanned by the columns of an integer
matrix B, and F is a rational matrix A with A @ B p-integral.  Everything is
done in exponent form: an order p^e is stored as e.

Sign conventions, pinned here and used by every function below:

* ``det_side``   = prod_i |det A_i|_p^((-1)^i)            (so degree 0 gives |det A_0|_p)
* ``coker_side`` = prod_i |Coker_i|^((-1)^(i+1)) * (t_amb_i / t_syn_i)^((-1)^(i+1))
* ``index_side`` = prod_i |L_i / L_i'|^((-1)^i)  * (t_amb_i / t_syn_i)^((-1)^i)

The per-degree identity then gives det_side == coker_side * index_side, and
the torsion ratios cancel in the product.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .errors import ArgumentError, DomainError, PreconditionError
from .numerics import det, mat_mul, require_prime, smith_normal_form, valuation


def _p_exponent_of_snf(M: Sequence[Sequence[int]], p: int) -> int:
    divisors = smith_normal_form(M).elementary_divisors
    if any(x == 0 for x in divisors) or len(divisors) != len(M):
        raise DomainError("matrix is singular")
    return sum(valuation(x, p) for x in divisors)


def coker_p_order(M: Sequence[Sequence[int]], p: int) -> int:
    """e with |Z^r / M Z^r|_(p-part) = p^e, from the Smith normal form."""
    require_prime(p)
    if len(M) != len(M[0]):
        raise ArgumentError("cokernel order needs a square matrix")
    return _p_exponent_of_snf(M, p)


def lattice_index_p(B: Sequence[Sequence[int]], p: int) -> int:
    """v_p([L : L']) where L' is spanned by the columns of B."""
    require_prime(p)
    d = det([list(r) for r in B])
    if d == 0:
        raise DomainError("B is singular")
    return valuation(d, p)


@dataclass(frozen=True)
class LatticeMapInstance:
    A: tuple[tuple[Fraction, ...], ...]
    B: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        A = tuple(tuple(Fraction(x) for x in r) for r in self.A)
        B = tuple(tuple(int(x) for x in r) for r in self.B)
        r = len(A)
        if r == 0 or any(len(row) != r for row in A) or len(B) != r or any(len(row) != r for row in B):
            raise ArgumentError("A and B must be square of the same rank")
        require_prime(self.p)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def rank(self) -> int:
        return len(self.A)

    def image_matrix(self) -> list[list[Fraction]]:
        return mat_mul(self.A, self.B)

    def validate(self) -> None:
        if det(self.A) == 0:
            raise PreconditionError("A is not invertible")
        if det([list(r) for r in self.B]) == 0:
            raise PreconditionError("B is singular")
        for row in self.image_matrix():
            for x in row:
                if x and valuation(x, self.p) < 0:
                    raise PreconditionError("A does not map L' into L: A @ B is not p-integral")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "A": [[f"{x.numerator}/{x.denominator}" for x in r] for r in self.A],
            "B": [[str(x) for x in r] for r in self.B],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LatticeMapInstance":
        return cls(
            tuple(tuple(Fraction(x) for x in r) for r in doc["A"]),
            tuple(tuple(int(x) for x in r) for r in doc["B"]),
            int(doc["p"]),
        )


@dataclass(frozen=True)
class IndexIdentityReport:
    lhs_exp: int
    coker_exp: int
    index_exp: int

    @property
    def holds(self) -> bool:
        return self.lhs_exp == -self.coker_exp + self.index_exp

    def to_json(self) -> dict:
        return {"lhs_exp": self.lhs_exp, "coker_exp": self.coker_exp, "index_exp": self.index_exp, "holds": self.holds}


def _clear_unit_denominators(M: Sequence[Sequence[Fraction]], p: int) -> list[list[int]]:
    den = lcm(*(x.denominator for r in M for x in r))
    if den % p == 0:
        raise PreconditionError("matrix has a denominator divisible by p")
    return [[int(x * den) for x in r] for r in M]


def lemma21_check(inst: LatticeMapInstance) -> IndexIdentityReport:
    """Exponent form: -v_p(det A) = -coker_exp(A B) + v_p(det B)."""
    inst.validate()
    p = inst.p
    lhs = -valuation(det(inst.A), p)
    coker = coker_p_order(_clear_unit_denominators(inst.image_matrix(), p), p)
    index = lattice_index_p(inst.B, p)
    return IndexIdentityReport(lhs, coker, index)


def mult_euler_char(orders: Mapping[int, int]) -> Fraction:
    """prod_i orders[i]^((-1)^i)."""
    out = Fraction(1)
    for i, n in orders.items():
        if not isinstance(n, int) or n <= 0:
            raise ArgumentError(f"order in degree {i} must be a positive integer")
        out *= Fraction(n) ** ((-1) ** i)
    return out


# -- graded complexes ----------------------------------------------------------


@dataclass(frozen=True)
class GradedEntry:
    degree: int
    inst: LatticeMapInstance
    torsion_syn: int = 1
    torsion_amb: int = 1


@dataclass(frozen=True)
class GradedLatticeComplex:
    entries: tuple[GradedEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise ArgumentError("a graded complex needs at least one degree")
        ps = {e.inst.p for e in self.entries}
        if len(ps) > 1:
            raise PreconditionError("all degrees must share one prime")
        if len({e.degree for e in self.entries}) != len(self.entries):
            raise ArgumentError("duplicate degree")
        for e in self.entries:
            if e.torsion_syn <= 0 or e.torsion_amb <= 0:
                raise ArgumentError("torsion orders must be positive")

    @property
    def p(self) -> int:
        return self.entries[0].inst.p

    def with_torsion(self, torsion: Mapping[int, tuple[int, int]]) -> "GradedLatticeComplex":
        return GradedLatticeComplex(
            tuple(GradedEntry(e.degree, e.inst, *torsion.get(e.degree, (e.torsion_syn, e.torsion_amb))) for e in self.entries)
        )


@dataclass(frozen=True)
class GradedReport:
    det_side: Fraction
    coker_side: Fraction
    index_side: Fraction
    torsion_ratio_syn: Fraction
    torsion_ratio_amb: Fraction

    @property
    def holds(self) -> bool:
        return self.det_side == self.coker_side * self.index_side

    def to_json(self) -> dict:
        s = lambda x: f"{x.numerator}/{x.denominator}"
        return {
            "det_side": s(self.det_side),
            "coker_side": s(self.coker_side),
            "index_side": s(self.index_side),
            "torsion_ratio_syn": s(self.torsion_ratio_syn),
            "torsion_ratio_amb": s(self.torsion_ratio_amb),
            "holds": self.holds,
        }


def graded_milne_identity(gc: GradedLatticeComplex) -> GradedReport:
    p = Fraction(gc.p)
    det_side = coker_side = index_side = Fraction(1)
    tor_syn = tor_amb = Fraction(1)
    for e in gc.entries:
        rep = lemma21_check(e.inst)
        sign = (-1) ** e.degree
        ratio = Fraction(e.torsion_amb, e.torsion_syn)
        det_side *= p ** (sign * rep.lhs_exp)  # |det A|_p = p^lhs_exp
        coker_side *= p ** (-sign * rep.coker_exp) * ratio ** (-sign)
        index_side *= p ** (sign * rep.index_exp) * ratio**sign
        tor_syn *= ratio ** (-sign)
        tor_amb *= ratio**sign
    return GradedReport(det_side, coker_side, index_side, tor_syn, tor_amb)


@dataclass(frozen=True)
class SplitDegree:
    """One degree of the semisimple pole case: an invertible block plus kernel/cokernel ranks."""

    degree: int
    inst: LatticeMapInstance
    kernel_rank: int
    cokernel_rank: int


def split_pole_check(blocks: Sequence[SplitDegree]) -> dict:
    """Index identity on the invertible blocks, plus a rank match per degree.

    The kernel block in degree i (a summand of H^i) and the free cokernel
    block (landing in H^(i+1)) must have the same rank for the e-twisted
    complex to have finite cohomology.
    """
    per_block = {b.degree: lemma21_check(b.inst).holds for b in blocks}
    ranks = {b.degree: b.kernel_rank == b.cokernel_rank for b in blocks}
    return {
        "blocks_hold": per_block,
        "ranks_match": ranks,
        "holds": all(per_block.values()) and all(ranks.values()),
    }


# -- random instances ------------------------------------------------------------


def _random_nonsingular(rng: random.Random, r: int, lo: int = -9, hi: int = 9) -> list[list[int]]:
    while True:
        M = [[rng.randint(lo, hi) for _ in range(r)] for _ in range(r)]
        if det(M) != 0:
            return M


def random_instance(rng: random.Random, p: int, max_rank: int = 6) -> LatticeMapInstance:
    """A valid instance: B random nonsingular, A = M / (p^k u) with u a p-unit and k as large as allowed."""
    r = rng.randint(1, max_rank)
    B = _random_nonsingular(rng, r)
    if rng.random() < 0.5:
        # sublattice with visible p-index
        B = mat_mul(B, [[p ** rng.randint(0, 2) if i == j else 0 for j in range(r)] for i in range(r)])
    M = _random_nonsingular(rng, r)
    if rng.random() < 0.5:
        M = [[x * p ** rng.randint(0, 2) for x in row] for row in M]
    MB = mat_mul(M, B)
    kmax = min(valuation(x, p) for row in MB for x in row if x)
    k = rng.randint(0, max(kmax, 0))
    u = rng.choice([1, 1, 2, 3, 5, 7, 11])
    while u % p == 0:
        u += 1
    scale = Fraction(1, p**k * u)
    A = [[x * scale for x in row] for row in M]
    return LatticeMapInstance(tuple(map(tuple, A)), tuple(map(tuple, B)), p)


def random_graded_complex(rng: random.Random, p: int, max_degrees: int = 4, max_rank: int = 4) -> GradedLatticeComplex:
    nd = rng.randint(1, max_degrees)
    degrees = sorted(rng.sample(range(0, 2 * max_degrees), nd))
    return GradedLatticeComplex(
        tuple(
            GradedEntry(i, random_instance(rng, p, max_rank), rng.randint(1, 100), rng.randint(1, 100))
            for i in degrees
        )
    )


def lemma21_suite(trials: int, seed: int, primes: Sequence[int] = (2, 3, 5), max_rank: int = 6) -> list[IndexIdentityReport]:
    rng = random.Random(seed)
    return [lemma21_check(random_instance(rng, rng.choice(list(primes)), max_rank)) for _ in range(trials)]
