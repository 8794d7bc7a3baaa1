import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from fpzeta.errors import ArgumentError, DomainError, PreconditionError
from fpzeta.lattice_lab import (
    GradedEntry,
    GradedLatticeComplex,
    LatticeMapInstance,
    SplitDegree,
    coker_p_order,
    graded_milne_identity,
    lattice_index_p,
    lemma21_check,
    lemma21_suite,
    mult_euler_char,
    random_graded_complex,
    random_instance,
    split_pole_check,
)
from fpzeta.numerics import det, mat_mul, valuation

primes = st.sampled_from([2, 3, 5])


def ident(r, c=1):
    return [[c if i == j else 0 for j in range(r)] for i in range(r)]


def brute_coker_p_order(M, p):
    """v_p(|det M|): the cokernel of a nonsingular M has order |det M|."""
    return valuation(det(M), p)


def random_unimodular(rng, r):
    U = ident(r)
    for _ in range(3 * r):
        i, j = rng.sample(range(r), 2) if r > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-3, 3)
        U = [[U[a][b] + (c * U[j][b] if a == i else 0) for b in range(r)] for a in range(r)]
    return U


def test_coker_examples():
    assert coker_p_order([[3, 0], [0, 1]], 3) == 1
    assert coker_p_order(ident(2, 3), 3) == 2
    with pytest.raises(DomainError):
        coker_p_order([[1, 2], [2, 4]], 3)


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=5, max_size=5), primes)
def test_coker_order_matches_determinant(M, p):
    if det(M) == 0:
        return
    assert coker_p_order(M, p) == brute_coker_p_order(M, p)


def test_index_examples():
    assert lattice_index_p(ident(3), 5) == 0
    assert lattice_index_p(ident(2, 5), 5) == 2
    with pytest.raises(DomainError):
        lattice_index_p([[0]], 5)


@pytest.mark.parametrize("seed", range(10))
def test_index_invariant_under_unimodular_factors(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    r = rng.randint(2, 5)
    D = ident(r)
    D[0][0] = p * p
    B = mat_mul(mat_mul(random_unimodular(rng, r), D), random_unimodular(rng, r))
    assert lattice_index_p(B, p) == 2


def test_identity_diagonal_case():
    rep = lemma21_check(LatticeMapInstance(((5, 0), (0, 1)), ((1, 0), (0, 1)), 5))
    assert (rep.lhs_exp, rep.coker_exp, rep.index_exp) == (-1, 1, 0)
    assert rep.holds


def test_identity_rescaled_line():
    rep = lemma21_check(LatticeMapInstance(((Fraction(1, 3),),), ((3,),), 3))
    assert (rep.lhs_exp, rep.coker_exp, rep.index_exp) == (1, 0, 1)
    assert rep.holds


def test_identity_with_unit_denominators():
    # denominators prime to p are units in Z_p
    rep = lemma21_check(LatticeMapInstance(((Fraction(3, 7), 0), (0, Fraction(1, 2))), ((1, 0), (0, 3)), 3))
    assert rep.holds
    assert (rep.lhs_exp, rep.coker_exp, rep.index_exp) == (-1, 2, 1)


def test_precondition_violations():
    with pytest.raises(PreconditionError):
        lemma21_check(LatticeMapInstance(((Fraction(1, 9),),), ((3,),), 3))
    with pytest.raises(PreconditionError):
        lemma21_check(LatticeMapInstance(((0,),), ((1,),), 3))
    with pytest.raises(PreconditionError):
        lemma21_check(LatticeMapInstance(((1, 0), (0, 1)), ((1, 1), (1, 1)), 3))
    with pytest.raises(ArgumentError):
        LatticeMapInstance(((1, 0),), ((1,),), 3)
    with pytest.raises(ArgumentError):
        LatticeMapInstance(((1,),), ((1,),), 6)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), primes)
def test_identity_on_random_instances(seed, p):
    inst = random_instance(random.Random(seed), p)
    inst.validate()
    assert lemma21_check(inst).holds


def test_suite_is_seed_deterministic():
    a = lemma21_suite(50, seed=7)
    b = lemma21_suite(50, seed=7)
    assert a == b
    assert all(r.holds for r in a)


def test_instance_json_round_trip():
    inst = random_instance(random.Random(3), 5)
    assert LatticeMapInstance.from_json(inst.to_json()) == inst


# -- multiplicative Euler characteristic ---------------------------------------


def test_mult_euler_char_examples():
    assert mult_euler_char({0: 1}) == 1
    assert mult_euler_char({0: 2, 1: 4}) == Fraction(1, 2)
    with pytest.raises(ArgumentError):
        mult_euler_char({0: 0})
    with pytest.raises(ArgumentError):
        mult_euler_char({1: -3})


@given(st.dictionaries(st.integers(0, 6), st.integers(1, 50), min_size=1))
def test_mult_euler_char_shift_inverts(orders):
    shifted = {i + 1: n for i, n in orders.items()}
    assert mult_euler_char(shifted) == 1 / mult_euler_char(orders)


# -- graded complexes ----------------------------------------------------------


def single(A, B, p, degree=0, t_syn=1, t_amb=1):
    return GradedEntry(degree, LatticeMapInstance(A, B, p), t_syn, t_amb)


def test_graded_single_degree():
    rep = graded_milne_identity(GradedLatticeComplex((single(((3,),), ((1,),), 3),)))
    assert rep.det_side == Fraction(1, 3)
    assert rep.coker_side == Fraction(1, 3)
    assert rep.index_side == 1
    assert rep.holds


def test_graded_equal_data_cancels_across_parity():
    gc = GradedLatticeComplex((single(((3,),), ((1,),), 3, 0, 4, 7), single(((3,),), ((1,),), 3, 1, 4, 7)))
    rep = graded_milne_identity(gc)
    assert rep.det_side == rep.coker_side == rep.index_side == 1
    assert rep.holds


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), primes, st.data())
def test_graded_identity_and_torsion_invariance(seed, p, data):
    gc = random_graded_complex(random.Random(seed), p)
    rep = graded_milne_identity(gc)
    assert rep.holds
    torsion = {e.degree: (data.draw(st.integers(1, 100)), data.draw(st.integers(1, 100))) for e in gc.entries}
    other = graded_milne_identity(gc.with_torsion(torsion))
    assert other.holds
    assert other.coker_side * other.index_side == rep.coker_side * rep.index_side
    trivial = graded_milne_identity(gc.with_torsion({e.degree: (1, 1) for e in gc.entries}))
    assert trivial.det_side == rep.det_side


def test_graded_rejections():
    with pytest.raises(ArgumentError):
        GradedLatticeComplex(())
    with pytest.raises(PreconditionError):
        GradedLatticeComplex((single(((1,),), ((1,),), 3), single(((1,),), ((1,),), 5, 1)))
    with pytest.raises(ArgumentError):
        GradedLatticeComplex((single(((1,),), ((1,),), 3), single(((1,),), ((1,),), 3)))
    with pytest.raises(ArgumentError):
        GradedLatticeComplex((single(((1,),), ((1,),), 3, 0, 0, 1),))


def test_graded_report_json():
    doc = graded_milne_identity(GradedLatticeComplex((single(((3,),), ((1,),), 3),))).to_json()
    assert doc["det_side"] == "1/3"
    assert doc["holds"] is True


def test_split_pole_check():
    inst = LatticeMapInstance(((3,),), ((1,),), 3)
    assert split_pole_check([SplitDegree(2, inst, 1, 1)])["holds"]
    assert not split_pole_check([SplitDegree(2, inst, 1, 0)])["holds"]
