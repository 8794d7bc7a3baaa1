import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from fpzeta.catalog import parse_scheme
from fpzeta.errors import ArgumentError, ResourceError, ValidationError
from fpzeta.schemes import (
    AffineSpace,
    BlowupAtRationalPoint,
    CountConfig,
    DisjointUnion,
    EllipticCurve,
    Empty,
    OpenComplement,
    Point,
    Product,
    ProjectiveHypersurface,
    ProjectiveSpace,
    Thickening,
    count_points,
    count_series,
    dimension,
    dumps,
    fermat,
    from_json,
    smoothness,
    to_json,
)


def brute_projective_count(X: ProjectiveHypersurface, p: int) -> int:
    """Points over F_p by plain modular arithmetic, one representative per line."""
    n = 0
    for v in itertools.product(range(p), repeat=X.N + 1):
        lead = next((c for c in v if c), None)
        if lead != 1:
            continue
        val = sum(c * eval_monomial(e, v) for e, c in X.terms) % p
        n += val == 0
    return n


def eval_monomial(e, v):
    out = 1
    for x, k in zip(v, e):
        out *= x**k
    return out


def brute_elliptic(a, b, p):
    return 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x**3 - a * x - b) % p == 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_elliptic_counts_match_enumeration(p):
    for a in range(p):
        for b in range(p):
            E = EllipticCurve(a, b)
            if E.discriminant() % p == 0:
                with pytest.raises(ValidationError):
                    count_points(E, p, 1)
                continue
            assert count_points(E, p, 1) == brute_elliptic(a, b, p)


def test_elliptic_over_two_rejected():
    with pytest.raises(ValidationError):
        count_points(EllipticCurve(1, 1), 2, 1)


def test_elliptic_extension_counts_follow_frobenius():
    # E: y^2 = x^3 + x over F_5 has a_1 = 2; N_k = q + 1 - (alpha^k + beta^k)
    E = EllipticCurve(1, 0)
    counts = count_series(E, 5, 4).counts
    s = [2, 2 * 2 - 2 * 5]
    s.append(2 * s[-1] - 5 * s[-2])
    s.append(2 * s[-1] - 5 * s[-2])
    assert counts == tuple(5**k + 1 - s[k - 1] for k in range(1, 5))


HESSE = ProjectiveHypersurface.from_map(2, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): 1}, "hesse")
QUADRIC = ProjectiveHypersurface.from_map(3, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1}, "quadric")


@pytest.mark.parametrize("X,p", [(HESSE, 5), (HESSE, 11), (QUADRIC, 3), (QUADRIC, 5), (fermat(2, 3), 7), (fermat(3, 4), 5)])
def test_hypersurface_counts_match_enumeration(X, p):
    assert count_points(X, p, 1) == brute_projective_count(X, p)


def test_quadric_surface_is_p1_times_p1():
    for p in (3, 5):
        for k in (1, 2):
            assert count_points(QUADRIC, p, k) == (p**k + 1) ** 2


def test_singular_hypersurface_rejected():
    cone = ProjectiveHypersurface.from_map(2, {(2, 0, 0): 1, (0, 2, 0): 1}, "cone")
    with pytest.raises(ValidationError):
        count_points(cone, 5, 1)
    assert not smoothness(cone, 5).smooth
    loose = ProjectiveHypersurface.from_map(2, {(2, 0, 0): 1, (0, 2, 0): 1}, "cone", assert_smooth=False)
    assert count_points(loose, 5, 1) == brute_projective_count(loose, 5)


def test_budget_exceeded():
    with pytest.raises(ResourceError):
        count_points(HESSE, 5, 3, CountConfig(budget=1000))


@pytest.mark.parametrize("name", ["P2", "E:1,0", "Bl:P2", "P1*E:1,0", "pt|P1"])
def test_combinator_identities(name):
    p = 5
    X = parse_scheme(name)
    for k in range(1, 4):
        n = count_points(X, p, k)
        match X:
            case Product(l, r):
                assert n == count_points(l, p, k) * count_points(r, p, k)
            case DisjointUnion(l, r):
                assert n == count_points(l, p, k) + count_points(r, p, k)
            case BlowupAtRationalPoint(b):
                assert n == count_points(b, p, k) + count_points(ProjectiveSpace(1), p, k) - 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["pt", "P1", "P2", "A1", "Gm", "E:1,0", "dualnum"]), st.sampled_from(["pt", "P1", "A2", "E:2,1"]), st.integers(1, 3))
def test_product_and_union_counts(a, b, k):
    A, B = parse_scheme(a), parse_scheme(b)
    assert count_points(Product(A, B), 5, k) == count_points(A, 5, k) * count_points(B, 5, k)
    assert count_points(DisjointUnion(A, B), 5, k) == count_points(A, 5, k) + count_points(B, 5, k)


def test_open_complement_and_thickening():
    assert count_points(OpenComplement(ProjectiveSpace(2), ProjectiveSpace(1)), 3, 2) == 81
    assert count_points(Thickening(EllipticCurve(1, 0)), 5, 2) == count_points(EllipticCurve(1, 0), 5, 2)
    with pytest.raises(ValidationError):
        count_points(OpenComplement(Point(), ProjectiveSpace(1)), 3, 1)


def test_dimensions_and_smoothness():
    assert dimension(Empty()) == -1
    assert dimension(Product(ProjectiveSpace(2), EllipticCurve(1, 0))) == 3
    assert smoothness(fermat(3, 4), 5).certified
    assert not smoothness(fermat(3, 4), 2).smooth
    assert not smoothness(AffineSpace(1), 5).smooth
    assert not smoothness(Thickening(Point()), 5).smooth


def test_bad_descriptors():
    with pytest.raises(ArgumentError):
        ProjectiveHypersurface.from_map(2, {(2, 0, 0): 1, (0, 1, 0): 1})
    with pytest.raises(ArgumentError):
        count_points(ProjectiveSpace(1), 5, 0)
    with pytest.raises(ArgumentError):
        count_points(ProjectiveSpace(1), 6, 1)


@pytest.mark.parametrize("name", ["P3", "E:1,0", "K3:quartic", "Bl:P2*pt", "Gm", "dualnum", "Eo:2,1|A2"])
def test_json_round_trip(name):
    X = parse_scheme(name)
    assert from_json(to_json(X)) == X
    assert dumps(from_json(to_json(X))) == dumps(X)
