"""Zeta functions of F_p-schemes, their special values, and a p-adic check of Milne's formula."""

from .catalog import parse_scheme
from .hodge import HodgeDiamond, correction_exponent, hodge_of, nygaard_quotient_exponent
from .lattice_lab import LatticeMapInstance, graded_milne_identity, lemma21_check
from .schemes import GroundField, CountConfig, count_points, count_series
from .special_values import special_value, verify_milne
from .zeta import ZetaRational, weight_factorization, weil_bound_check, zeta_from_counts, zeta_of

__all__ = [
    "CountConfig",
    "GroundField",
    "HodgeDiamond",
    "LatticeMapInstance",
    "ZetaRational",
    "correction_exponent",
    "count_points",
    "count_series",
    "graded_milne_identity",
    "hodge_of",
    "lemma21_check",
    "nygaard_quotient_exponent",
    "parse_scheme",
    "special_value",
    "verify_milne",
    "weight_factorization",
    "weil_bound_check",
    "zeta_from_counts",
    "zeta_of",
]
