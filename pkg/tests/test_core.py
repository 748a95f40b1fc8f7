from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import common_hyperplane_exhaustive, general_position_exhaustive, tperm_exhaustive
from strategies import lex_scalars, lex_triples, points, rat_scalars, rationals, square_matrices
from tropifacet import (
    BOTTOM,
    DimensionError,
    Lex,
    ProjectivePoint,
    TropicalHalfSpace,
    ValidationError,
    halfspace,
    in_general_position,
    is_tropically_singular,
    optimal_permutation,
    point,
    sector_contains,
    tperm,
    tplus,
    ttimes,
)
from tropifacet.core import LEX, RAT, halfspace_contains, on_halfspace_boundary, parse_lex, tinv, tleq
from tropifacet.core import parse_rational


# -- scalars --------------------------------------------------------------------

def _semiring_axioms(x, y, z, one):
    assert tplus(x, y) == tplus(y, x)
    assert tplus(tplus(x, y), z) == tplus(x, tplus(y, z))
    assert ttimes(x, y) == ttimes(y, x)
    assert ttimes(ttimes(x, y), z) == ttimes(x, ttimes(y, z))
    assert ttimes(x, tplus(y, z)) == tplus(ttimes(x, y), ttimes(x, z))
    assert tplus(BOTTOM, x) == x
    assert ttimes(BOTTOM, x) is BOTTOM
    assert ttimes(one, x) == x
    assert tplus(x, x) == x
    if x is not BOTTOM:
        assert ttimes(x, tinv(x)) == one


@settings(max_examples=200)
@given(rat_scalars, rat_scalars, rat_scalars)
def test_semiring_axioms_rational(x, y, z):
    _semiring_axioms(x, y, z, RAT.zero)


@settings(max_examples=200)
@given(lex_scalars, lex_scalars, lex_scalars)
def test_semiring_axioms_lex(x, y, z):
    _semiring_axioms(x, y, z, LEX.zero)


@settings(max_examples=200)
@given(lex_triples, lex_triples, lex_triples)
def test_lex_order_is_translation_invariant_and_projections_are_homomorphisms(x, y, z):
    if x <= y:
        assert x + z <= y + z
    assert (x <= y) or (y <= x)
    for k in (1, 2, 3):
        assert (x + y).pi(k) == x.pi(k) + y.pi(k)
        assert (-x).pi(k) == -x.pi(k)


@settings(max_examples=200)
@given(rationals, rationals, rationals)
def test_rational_order_is_translation_invariant(x, y, z):
    if x <= y:
        assert x + z <= y + z


def test_bottom_is_below_everything():
    assert tleq(BOTTOM, Fraction(-10**9))
    assert not tleq(Fraction(0), BOTTOM)
    with pytest.raises(ValueError):
        tinv(BOTTOM)


def test_lex_refuses_tuple_repetition():
    with pytest.raises(TypeError):
        Lex(1, 2, 3) * 2


def test_lex_orders_lexicographically():
    assert Lex(0, 5, 5) < Lex(1, -9, -9)
    assert Lex(0, 1, -9) > Lex(0, 0, 9)
    assert str(Lex(1, Fraction(1, 2), -3)) == "(1,1/2,-3)"


def test_parse_rational_is_exact_and_rejects_floats():
    assert parse_rational("2.5176") == Fraction(25176, 10000)
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(7) == 7
    with pytest.raises(ValidationError):
        parse_rational(0.5)
    with pytest.raises(ValidationError):
        parse_rational(True)
    with pytest.raises(ValidationError):
        parse_rational("x")


def test_parse_lex_forms():
    assert parse_lex("(1,2,3)") == Lex(1, 2, 3)
    assert parse_lex("5") == Lex(5, 0, 0)
    with pytest.raises(ValidationError):
        parse_lex("(1,2)")


# -- projective points --------------------------------------------------------------

def test_projective_points_are_normalized_and_hashable():
    a = point(3, 4, 6)
    assert a.coords == (0, 1, 3)
    assert a == ProjectivePoint(["0", "1", "3"])
    assert hash(a) == hash(point(0, 1, 3))
    with pytest.raises(AttributeError):
        a.coords = (1, 2, 3)


def test_projective_point_rejects_bad_input():
    with pytest.raises(DimensionError):
        ProjectivePoint([0])
    with pytest.raises(ValidationError):
        ProjectivePoint([Fraction(0), Lex(0, 0, 0)])


def test_lex_point_projection():
    a = ProjectivePoint([Lex(1, 0, 2), Lex(3, 1, 0)])
    assert a.coords == (Lex(0, 0, 0), Lex(2, 1, -2))
    assert a.project(1) == point(0, 2)
    assert a.project(3) == point(0, -2)


# -- permanents --------------------------------------------------------------------

def test_tperm_small_examples():
    assert tperm([[0, 0], [0, 0]]) == 0
    assert tperm([[0, 1], [1, 0]]) == 2
    assert is_tropically_singular([[0, 0], [0, 0]])
    assert not is_tropically_singular([[0, 1], [1, 0]])
    assert optimal_permutation([[0, 1], [1, 0]]) == (1, 0)
    assert optimal_permutation([[0, 0], [0, 0]]) is None


def test_tperm_rejects_non_square_and_bottom():
    with pytest.raises(DimensionError):
        tperm([[0, 1]])
    with pytest.raises(DimensionError):
        tperm([])
    with pytest.raises(ValidationError):
        tperm([[BOTTOM]])


@settings(max_examples=100)
@given(square_matrices(1, 6))
def test_tperm_matches_exhaustive_permutations(U):
    best, argmax = tperm_exhaustive(U)
    assert tperm(U) == best
    assert is_tropically_singular(U) == (len(argmax) > 1)
    assert optimal_permutation(U) == (argmax[0] if len(argmax) == 1 else None)


@settings(max_examples=100)
@given(square_matrices(1, 4, lex_triples))
def test_tperm_over_lex_matches_exhaustive_permutations(U):
    best, argmax = tperm_exhaustive(U)
    assert tperm(U) == best
    assert is_tropically_singular(U) == (len(argmax) > 1)


def test_points_on_a_common_hyperplane_give_a_singular_matrix():
    # three points on the tropical line with apex (0,5,3)
    a = point(0, 5, 3)
    cols = [a, point(0, 5, 0), point(0, 0, 3)]
    for c in cols:
        diffs = sorted((c[k] - a[k] for k in range(3)), reverse=True)
        assert diffs[0] == diffs[1]
    U = [[c[i] for c in cols] for i in range(3)]
    assert len(tperm_exhaustive(U)[1]) >= 2
    assert is_tropically_singular(U)


@settings(max_examples=50)
@given(st.integers(3, 4).flatmap(lambda n: st.lists(points(n, st.integers(-4, 4)),
                                                    min_size=n, max_size=n)))
def test_singularity_iff_common_tropical_hyperplane(cols):
    n = len(cols)
    U = [[c[i] for c in cols] for i in range(n)]
    assert is_tropically_singular(U) == common_hyperplane_exhaustive([c.coords for c in cols])


@settings(max_examples=50)
@given(st.lists(points(3, st.integers(-3, 3)), min_size=1, max_size=5))
def test_general_position_matches_exhaustive(pts):
    assert in_general_position(pts) == general_position_exhaustive([p.coords for p in pts])


def test_general_position_examples():
    assert in_general_position([point(0, -1, 1), point(0, 0, 0), point(0, 1, -1)])
    assert not in_general_position([point(0, 1, 2), point(0, 1, 2)])
    assert not in_general_position([point(0, 0, 0), point(0, 1, 0), point(0, 0, 1)])


# -- sectors and half-spaces -----------------------------------------------------------

FOUR = [point(0, 1, 3), point(0, 3, 1), point(0, 6, 2), point(0, 2, 5)]


def test_sector_examples():
    a = point(0, 5, 3)
    assert all(sector_contains(a, i, a) for i in range(3))
    assert sector_contains(a, 1, point(0, 9, 4))
    v3 = FOUR[2]
    assert [sector_contains(v3, 1, v) for v in FOUR] == [False, False, True, False]


def test_halfspace_examples():
    H = halfspace((0, 2, 2), {1, 2})
    assert all(halfspace_contains(H, v) for v in FOUR)
    assert halfspace_contains(H, H.apex)
    assert halfspace_contains(halfspace((0, 1, 1), {0}), point(0, 1, -1))


def test_halfspace_boundary_examples():
    H = halfspace((0, 3, 3), {1, 2})
    assert on_halfspace_boundary(H, H.apex)
    assert on_halfspace_boundary(H, point(0, 1, 3))
    # v3 - a = (0, 3, -1): the I-side maximum 3 exceeds the other side's 0
    assert not on_halfspace_boundary(H, point(0, 6, 2))
    assert halfspace_contains(H, point(0, 6, 2))


def test_halfspace_rejects_bad_index_sets():
    with pytest.raises(ValidationError):
        halfspace((0, 1, 2), set())
    with pytest.raises(ValidationError):
        halfspace((0, 1, 2), {0, 1, 2})
    with pytest.raises(ValidationError):
        halfspace((0, 1, 2), {3})


def test_halfspace_repr_and_complement():
    H = halfspace((0, 1, 2), {2})
    assert H.complement == frozenset({0, 1})
    assert repr(H) == "H(['0', '1', '2'], [2])"


@settings(max_examples=200)
@given(points(3), points(3), st.integers(0, 2), st.lists(points(3), min_size=1, max_size=8))
def test_sector_order_property(a, b, i, xs):
    if sector_contains(a, i, b):
        for x in xs:
            if sector_contains(b, i, x):
                assert sector_contains(a, i, x)
    else:
        assert sector_contains(b, i, b) and not sector_contains(a, i, b)


@settings(max_examples=200)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    points(n), points(n), st.sets(st.integers(0, n - 1), min_size=1, max_size=n - 1))))
def test_halfspace_is_union_of_its_sectors(args):
    a, x, I = args
    H = TropicalHalfSpace(a, frozenset(I))
    assert H.contains(x) == any(sector_contains(a, i, x) for i in I)
    assert halfspace_contains(H, x) == H.contains(x)
