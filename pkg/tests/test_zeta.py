import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from fpzeta.catalog import parse_scheme, round_trip_names
from fpzeta.errors import ArgumentError, FactorizationError, ValidationError
from fpzeta.numerics import IntPolynomial
from fpzeta.schemes import count_series, dimension, smoothness
from fpzeta.zeta import (
    ONE,
    WeilFactorization,
    ZetaRational,
    degree_bounds,
    exp_series,
    series_from_zeta,
    weight_factorization,
    weil_bound_check,
    zeta_from_counts,
    zeta_of,
)


def lin(a: int) -> IntPolynomial:
    return IntPolynomial((1, -a))


def product(polys) -> IntPolynomial:
    out = IntPolynomial.one()
    for P in polys:
        out = out * P
    return out


def test_zeta_rational_validation():
    with pytest.raises(ValidationError):
        ZetaRational(IntPolynomial((2, 1)), IntPolynomial.one())
    Z = ZetaRational.reduced(lin(2).coeffs, (lin(2) * lin(3)).coeffs)
    assert Z == ZetaRational(IntPolynomial.one(), lin(3))
    assert ZetaRational.from_json(Z.to_json()) == Z


def test_exp_series_of_point():
    assert exp_series([1, 1, 1, 1]) == [1, 1, 1, 1, 1]


@pytest.mark.parametrize("N,p", [(1, 2), (2, 3), (3, 5), (2, 7)])
def test_projective_space_closed_form(N, p):
    expected = ZetaRational(IntPolynomial.one(), product(lin(p**i) for i in range(N + 1)))
    assert zeta_of(parse_scheme(f"P{N}"), p) == expected


def test_elliptic_curve_over_f5():
    Z = zeta_of(parse_scheme("E:1,0"), 5)
    assert Z.num == IntPolynomial((1, -2, 5))
    assert Z.den == lin(1) * lin(5)


def test_gm_and_affine_line():
    assert zeta_of(parse_scheme("Gm"), 5) == ZetaRational(lin(1), lin(5))
    assert zeta_of(parse_scheme("A1"), 5) == ZetaRational(IntPolynomial.one(), lin(5))
    assert zeta_of(parse_scheme("empty"), 5) == ONE


def test_fermat_quartic_counts_frozen():
    K3 = parse_scheme("K3:quartic")
    assert count_series(K3, 3, 3).counts == (16, 280, 784)
    assert count_series(K3, 5, 3).counts == (0, 1112, 15360)
    assert count_series(K3, 7, 3).counts == (64, 3480, 118336)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_fermat_quartic_factorization_shape(p):
    wf = weight_factorization(zeta_of(parse_scheme("K3:quartic"), p), p, 2)
    assert [(i, P.degree) for i, P in wf.factors] == [(0, 1), (2, 22), (4, 1)]
    assert wf.factor(4) == lin(p * p)
    assert weil_bound_check(wf, p).passed


# -- reconstruction ------------------------------------------------------------

roots = st.lists(st.sampled_from([1, 2, 3, 5, -1, -2, 4, 7]), max_size=3)


@settings(max_examples=60, deadline=None)
@given(roots, roots, st.integers(0, 3))
def test_series_round_trip(num_roots, den_roots, extra):
    Z = ZetaRational.reduced(product(map(lin, num_roots)).coeffs, product(map(lin, den_roots)).coeffs)
    a, b = len(num_roots), len(den_roots)
    K = a + b + 1 + extra
    counts = series_from_zeta(Z, K)
    assert zeta_from_counts(counts, a, b) == Z
    assert series_from_zeta(zeta_from_counts(counts, a, b), K) == counts


def test_counts_are_power_sums():
    # N_k = sum beta^k - sum alpha^k for Z = prod(1 - alpha t) / prod(1 - beta t)
    Z = ZetaRational(lin(2), lin(3) * lin(5))
    assert series_from_zeta(Z, 4) == [3**k + 5**k - 2**k for k in range(1, 5)]


def test_too_few_counts():
    with pytest.raises(ArgumentError):
        zeta_from_counts([4, 32, 148], 2, 2)


def test_counts_fitting_no_rational_function():
    with pytest.raises(ValidationError):
        zeta_from_counts([1, 7, 2, 100, 3], 1, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_catalog_round_trip(p):
    for name in round_trip_names(p):
        X = parse_scheme(name)
        a, b = degree_bounds(X, p)
        counts = list(count_series(X, p, a + b + 1).counts)
        assert series_from_zeta(zeta_from_counts(counts, a, b), a + b + 1) == counts, name


# -- Weil factorization --------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7])
def test_catalog_weil_gate(p):
    for name in round_trip_names(p):
        X = parse_scheme(name)
        if not smoothness(X, p).smooth or dimension(X) < 0:
            continue
        Z = zeta_of(X, p)
        wf = weight_factorization(Z, p, dimension(X))
        assert wf.to_zeta() == Z
        assert weil_bound_check(wf, p, 1e-9).passed, name


def test_corrupted_factor_fails_gate():
    bad = WeilFactorization(1, ((0, lin(1)), (1, IntPolynomial((1, -6, 5))), (2, lin(5))))
    report = weil_bound_check(bad, 5)
    assert not report.passed
    assert report.deviations[1] > 0.5


def test_non_weil_zeta_rejected():
    with pytest.raises(FactorizationError):
        weight_factorization(ZetaRational.reduced([1], [1, -5, 6]), 5, 1)


def test_plane_cubic_over_f7():
    wf = weight_factorization(zeta_of(parse_scheme("fermat:2,3"), 7), 7, 1)
    assert wf.factor(1) == IntPolynomial((1, 1, 7))
