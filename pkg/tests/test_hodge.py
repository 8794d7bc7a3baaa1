import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from fpzeta.catalog import parse_scheme
from fpzeta.errors import ArgumentError, UnsupportedError
from fpzeta.hodge import (
    POINT,
    HodgeDiamond,
    correction_exponent,
    curve,
    hodge_of,
    hypersurface,
    kunneth,
    nygaard_quotient_exponent,
    primitive_middle_hodge,
    projective_space,
)

CATALOG = ["pt", "P1", "P2", "P3", "E:1,0", "K3:quartic", "fermat:2,3", "fermat:3,3", "fermat:4,3", "fermat:4,5", "Bl:P2", "Bl:P3", "P1*E:1,0", "E:1,0*E:2,1", "P1|P2"]


@st.composite
def diamonds(draw, symmetric=True, max_d=4, max_h=20):
    d = draw(st.integers(0, max_d))
    h = [[draw(st.integers(0, max_h)) for _ in range(d + 1)] for _ in range(d + 1)]
    if symmetric:
        for i in range(d + 1):
            for j in range(d + 1):
                h[d - i][d - j] = h[i][j]
    return HodgeDiamond.from_rows(h)


def test_classical_values():
    assert hypersurface(3, 4).h[1][1] == 20
    assert hypersurface(3, 4).h[2][0] == 1
    assert hypersurface(4, 5).h[2][1] == 101
    assert hypersurface(5, 3).h[3][1] == 1
    assert hypersurface(5, 3).h[2][2] == 21
    assert hypersurface(3, 3).h[1][1] == 7


@pytest.mark.parametrize("d", range(1, 8))
def test_plane_curve_genus(d):
    assert hypersurface(2, d).h[1][0] == (d - 1) * (d - 2) // 2


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("d", range(2, 7))
def test_chi_y_agrees_with_jacobian_ring(n, d):
    hd = hypersurface(n + 1, d)
    prim = primitive_middle_hodge(n, d)
    for q in range(n + 1):
        expected = prim[q] + (1 if 2 * q == n else 0)
        assert hd.h[n - q][q] == expected
    for j in range(n + 1):
        if 2 * j != n:
            assert hd.h[j][j] == 1


@pytest.mark.parametrize("name", [c for c in CATALOG if c != "P1|P2"] + ["P1|E:1,0"])
def test_catalog_serre_symmetry(name):
    assert hodge_of(parse_scheme(name)).is_serre_symmetric()


def test_blowup_adds_exceptional_classes():
    assert hodge_of(parse_scheme("Bl:P2")) == kunneth(projective_space(1), projective_space(1))
    bl3 = hodge_of(parse_scheme("Bl:P3"))
    assert bl3.betti() == [1, 0, 2, 0, 2, 0, 1]


def test_betti_numbers():
    assert hodge_of(parse_scheme("E:1,0")).betti() == [1, 2, 1]
    assert hodge_of(parse_scheme("K3:quartic")).betti() == [1, 0, 22, 0, 1]


def test_unsupported():
    with pytest.raises(UnsupportedError):
        hodge_of(parse_scheme("A1"))
    with pytest.raises(UnsupportedError):
        hodge_of(parse_scheme("dualnum"))
    with pytest.raises(UnsupportedError):
        hodge_of(parse_scheme("K3:quartic"), p=2)


def test_bad_diamond():
    with pytest.raises(ArgumentError):
        HodgeDiamond(1, ((1,),))
    with pytest.raises(ArgumentError):
        HodgeDiamond.from_rows([[1, -1], [0, 1]])


def test_json_round_trip():
    hd = hypersurface(4, 5)
    assert HodgeDiamond.from_json(hd.to_json()) == hd


@given(diamonds(max_d=2), diamonds(max_d=2), diamonds(max_d=2))
def test_kunneth_associative(a, b, c):
    assert kunneth(kunneth(a, b), c) == kunneth(a, kunneth(b, c))


@given(diamonds(), diamonds())
def test_kunneth_commutative_with_unit(a, b):
    assert kunneth(a, b) == kunneth(b, a)
    assert kunneth(a, POINT) == a


@given(diamonds(max_d=3), diamonds(max_d=3))
def test_kunneth_betti_convolution(a, b):
    ba, bb = a.betti(), b.betti()
    conv = [sum(ba[i] * bb[k - i] for i in range(len(ba)) if 0 <= k - i < len(bb)) for k in range(len(ba) + len(bb) - 1)]
    assert kunneth(a, b).betti() == conv


# -- the two exponents ---------------------------------------------------------


@pytest.mark.parametrize("N", range(0, 5))
@pytest.mark.parametrize("n", range(-2, 7))
def test_projective_space_correction(N, n):
    # h^{jj} = 1 only: sum_{j <= min(n, N)} (n - j)
    expected = sum(n - j for j in range(min(n, N) + 1)) if n >= 0 else 0
    assert correction_exponent(projective_space(N), n) == expected


def test_curve_correction():
    # chi(O) = 1 - g at n = 1, and (2 - 2g) - (1 - g)... at n = 2
    for g in range(4):
        assert correction_exponent(curve(g), 1) == 1 - g
        assert correction_exponent(curve(g), 2) == 2 * (1 - g) - (g - 1)


def test_negative_n_is_zero():
    hd = hypersurface(3, 4)
    for n in (-1, -2, -5):
        assert correction_exponent(hd, n) == 0
        assert nygaard_quotient_exponent(hd, n) == 0


@pytest.mark.parametrize("name", CATALOG)
def test_identity_on_catalog(name):
    hd = hodge_of(parse_scheme(name))
    for n in range(0, 7):
        assert correction_exponent(hd, n) == nygaard_quotient_exponent(hd, n)


@settings(max_examples=150)
@given(diamonds(), st.integers(0, 6))
def test_identity_on_random_symmetric_diamonds(hd, n):
    assert correction_exponent(hd, n) == nygaard_quotient_exponent(hd, n)


@settings(max_examples=150)
@given(diamonds(symmetric=False), st.integers(0, 6))
def test_identity_without_symmetry(hd, n):
    assert correction_exponent(hd, n) == nygaard_quotient_exponent(hd, n)
