"""Special values C(X, n) and the p-adic check of Milne's formula.

With Z(X, t) = (1 - p^n t)^(-rho) R(t) and R(p^-n) finite and nonzero,
C(X, n) = R(p^-n) and rho = rho_n is the signed pole order (negative for a
zero).  For smooth proper X the formula reads

    |C(X, n)|_p^-1 = chi(X, Z_p(n), e) * p^chi(X, O_X, n)

and |C|_p^-1 = p^v with v = v_p(C).  The syntomic factor cannot be computed
here, so it is inferred as p^(v - chi(X, O_X, n)).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .errors import FactorizationError, UnsupportedError
from .hodge import correction_exponent, hodge_of, nygaard_quotient_exponent
from .numerics import divide_out_factor, require_prime, strip_and_evaluate, valuation
from .schemes import DEFAULT_CONFIG, CountConfig, GroundField, Scheme, dimension, smoothness
from .zeta import ZetaRational, weight_factorization, zeta_of

SEMISIMPLICITY_CAVEAT = "Frobenius is assumed to act semisimply on the p^n-eigenspace (hypothesis of the formula)"
INFERRED_CAVEAT = "the syntomic Euler characteristic is inferred from v_p(C) and the correction exponent, not computed"
HODGE_CAVEAT = "Hodge numbers are the characteristic-zero values of the catalog variety"


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SpecialValueReport:
    n: int
    p: int
    rho: int
    value: Fraction
    p_valuation: int
    extra_valuations: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "rho": self.rho,
            "value": fraction_str(self.value),
            "p_valuation": self.p_valuation,
            "extra_valuations": {str(l): v for l, v in sorted(self.extra_valuations.items())},
        }


def pole_order(Z: ZetaRational, p: int, n: int) -> int:
    """Signed rho_n: multiplicity of (1 - p^n t) in den minus that in num."""
    require_prime(p)
    return divide_out_factor(Z.den, p, n)[0] - divide_out_factor(Z.num, p, n)[0]


def special_value(Z: ZetaRational, p: int, n: int, extra_primes: Iterable[int] = ()) -> SpecialValueReport:
    require_prime(p)
    m_num, v_num = strip_and_evaluate(Z.num, p, n)
    m_den, v_den = strip_and_evaluate(Z.den, p, n)
    value = v_num / v_den
    extras = {l: valuation(value, require_prime(l)) for l in extra_primes}
    return SpecialValueReport(n, p, m_den - m_num, value, valuation(value, p), extras)


def infer_syntomic_exponent(special: SpecialValueReport, correction_exp: int) -> int:
    """Exponent e with chi(X, Z_p(n), e) = p^e, given |C|_p^-1 = p^v_p(C)."""
    return special.p_valuation - correction_exp


@dataclass
class MilneReport:
    scheme: str
    n: int
    special: SpecialValueReport
    correction_exp: int
    nygaard_exp: int
    inferred_syntomic_exp: int
    factor_valuation: int | None
    consistent: bool
    caveats: list[str]

    @property
    def syntomic_nonnegative(self) -> bool:
        return self.inferred_syntomic_exp >= 0

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "n": self.n,
            "special": self.special.to_json(),
            "correction_exp": self.correction_exp,
            "nygaard_exp": self.nygaard_exp,
            "inferred_syntomic_exp": self.inferred_syntomic_exp,
            "factor_valuation": self.factor_valuation,
            "syntomic_nonnegative": self.syntomic_nonnegative,
            "consistent": self.consistent,
            "caveats": list(self.caveats),
        }


def _valuation_from_factors(factors, p: int, n: int) -> int:
    """v_p(C) rebuilt degree by degree: sum_i (-1)^(i+1) v_p(P_i stripped at p^-n)."""
    total = 0
    for i, P in factors:
        _, val = strip_and_evaluate(P, p, n)
        total += (-1) ** (i + 1) * valuation(val, p)
    return total


def verify_milne(
    desc: Scheme,
    field: GroundField | int,
    n: int,
    config: CountConfig = DEFAULT_CONFIG,
    extra_primes: Iterable[int] = (),
) -> MilneReport:
    """counts -> zeta -> C(X, n) -> correction exponent -> inferred syntomic exponent."""
    p = field.p if isinstance(field, GroundField) else require_prime(field)
    s = smoothness(desc, p, config)
    if not s.smooth:
        raise UnsupportedError(f"{desc.name} is not smooth proper over F_{p}: {s.note}")
    caveats = [SEMISIMPLICITY_CAVEAT, INFERRED_CAVEAT, HODGE_CAVEAT]
    if not s.certified:
        caveats.append(f"smoothness is heuristic: {s.note}")
    hd = hodge_of(desc)
    Z = zeta_of(desc, p, config)
    sv = special_value(Z, p, n, extra_primes)
    corr = correction_exponent(hd, n)
    nyg = nygaard_quotient_exponent(hd, n)
    e_syn = infer_syntomic_exponent(sv, corr)

    fac_val = None
    try:
        wf = weight_factorization(Z, p, dimension(desc))
    except FactorizationError as exc:
        caveats.append(f"no Weil factorization: {exc}")
    else:
        fac_val = _valuation_from_factors(wf.factors, p, n)
        mult = divide_out_factor(wf.factor(2 * n), p, n)[0] if 0 <= 2 * n <= 2 * wf.d else 0
        if mult <= 1:
            caveats.append(f"eigenvalue p^{n} has multiplicity {mult} on H^{2 * n}: semisimplicity is automatic there")
        else:
            caveats.append(f"eigenvalue p^{n} has multiplicity {mult} on H^{2 * n}: semisimplicity assumed, not checked")

    if e_syn < 0:
        caveats.append("inferred syntomic exponent is negative: flagged for inspection")
    consistent = (
        (fac_val is None or fac_val == sv.p_valuation)
        and sv.p_valuation == e_syn + corr
        and (n < 0 or corr == nyg)
    )
    return MilneReport(desc.name, n, sv, corr, nyg, e_syn, fac_val, consistent, caveats)
