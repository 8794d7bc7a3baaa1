import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from fpzeta.errors import ResourceError
from fpzeta.finite_field import FIELD_TABLE_LIMIT, GF, _fp_mulmod, first_irreducible, get_field, is_irreducible
from fpzeta.gauss_sums import diagonal_affine_count, diagonal_projective_count

FIELDS = [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1), (3, 3)]


def brute_irreducible(f, p):
    """No monic factor of degree 1..deg/2, by trial division over all candidates."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            g = list(lower) + [1]
            r = list(f)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * g[j]) % p
            if not any(r[:d]):
                return False
    return True


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (5, 3)])
def test_irreducibility_matches_trial_division(p, k):
    for lower in itertools.product(range(p), repeat=k):
        f = list(lower) + [1]
        if f[0] == 0:
            continue
        assert is_irreducible(f, p) == brute_irreducible(f, p)
    assert brute_irreducible(first_irreducible(p, k), p)


@pytest.mark.parametrize("p,k", FIELDS)
def test_table_multiplication_matches_polynomial_arithmetic(p, k):
    F = get_field(p, k)
    x = F.elements()
    a, b = np.meshgrid(x, x)
    table = F.mul(a, b)
    for i in range(0, F.q, max(1, F.q // 7)):
        for j in range(F.q):
            prod = _fp_mulmod(F._decode(i), F._decode(j), F.modulus, p)
            assert table[j, i] == F._encode(prod)


@pytest.mark.parametrize("p,k", FIELDS)
def test_generator_has_full_order(p, k):
    F = get_field(p, k)
    assert sorted(F.exp.tolist()) == list(range(1, F.q))


@pytest.mark.parametrize("p,k", FIELDS)
def test_trace_is_balanced(p, k):
    F = get_field(p, k)
    counts = np.bincount(F.trace(F.elements()), minlength=p)
    assert counts.tolist() == [p ** (k - 1)] * p


@pytest.mark.parametrize("p,k", [(3, 1), (5, 2), (7, 1), (3, 3)])
def test_quadratic_character_counts_squares(p, k):
    F = get_field(p, k)
    chi = F.quadratic_character(F.elements())
    assert int((chi == 1).sum()) == (F.q - 1) // 2
    assert int(chi.sum()) == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(field, data):
    F = get_field(*field)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.power(a, F.q) == a


def test_table_limit():
    with pytest.raises(ResourceError):
        GF(2, 22)
    assert FIELD_TABLE_LIMIT == 1 << 21


# -- Gauss-sum counts against enumeration --------------------------------------


def brute_affine_count(coeffs, d, p, k):
    F = get_field(p, k)
    x = F.elements()
    powd = F.power(x, d)
    terms = [F.mul(np.full(F.q, F.from_int(c)), powd) for c in coeffs]
    acc = terms[0]
    for t in terms[1:]:
        acc = F.add(acc[..., None], t)
    return int((acc == 0).sum())


@pytest.mark.parametrize(
    "coeffs,d,p,k",
    [
        ((1, 1, 1), 3, 7, 1),
        ((1, 1, 1), 3, 7, 2),
        ((1, 2, 3), 3, 7, 1),
        ((1, 1, 1), 3, 2, 2),
        ((1, 1, 1, 1), 4, 3, 1),
        ((1, 1, 1, 1), 4, 3, 2),
        ((1, 1, 1, 1), 4, 5, 1),
        ((1, 1, 1), 4, 5, 2),
        ((2, 1, 1), 2, 5, 3),
    ],
)
def test_gauss_sum_count_matches_enumeration(coeffs, d, p, k):
    assert diagonal_affine_count(coeffs, d, p, k) == brute_affine_count(coeffs, d, p, k)


def test_projective_count_of_conic():
    # a smooth conic is a P1
    for p, k in [(3, 1), (5, 2), (7, 1)]:
        assert diagonal_projective_count((1, 1, 1), 2, p, k) == p**k + 1
