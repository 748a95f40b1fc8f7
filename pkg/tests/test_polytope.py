import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import member, pseudovertices_by_trees, pure_by_triangulation, type_vector
from strategies import points, polytopes
from tropifacet import (
    BudgetExceeded,
    PreconditionError,
    TropicalPolytope,
    ValidationError,
    canonical_representation,
    cell_dimension,
    contains,
    enumerate_pseudovertices,
    extreme_points,
    halfspace,
    ij_pseudovertices,
    is_Ij_pseudovertex,
    is_pure,
    point,
    project_onto,
    type_of,
    witness_extreme_points,
)
from tropifacet.instances import builtin

FOUR = TropicalPolytope([(0, 1, 3), (0, 3, 1), (0, 6, 2), (0, 2, 5)])
DIAGONAL = TropicalPolytope([(0, -1, 1), (0, 0, 0), (0, 1, -1)])
SIMPLEX = TropicalPolytope([(0, 0, 0), (0, 1, 0), (0, 0, 1)])


def fs(*sets):
    return tuple(frozenset(s) for s in sets)


def one_based(S):
    return tuple(frozenset(r + 1 for r in s) for s in S)


# -- construction -------------------------------------------------------------------

def test_polytope_rejects_bad_generators():
    with pytest.raises(ValidationError):
        TropicalPolytope([])
    with pytest.raises(ValidationError):
        TropicalPolytope([(0, 1, 2), (5, 6, 7)])
    with pytest.raises(Exception):
        TropicalPolytope([(0, 1, 2), (0, 1)])


def test_without_drops_one_generator():
    assert list(FOUR.without(1)) == [FOUR[0], FOUR[2], FOUR[3]]


# -- membership --------------------------------------------------------------------

def test_project_onto_examples():
    assert project_onto(FOUR, FOUR[0]) == FOUR[0]
    x = point(0, 1, -1)
    assert project_onto(SIMPLEX, x) == point(0, 1, 0)
    assert not contains(SIMPLEX, x)


@settings(max_examples=100)
@given(polytopes(p_min=1, p_max=5), st.lists(st.integers(-6, 0), min_size=5, max_size=5))
def test_tropical_combinations_are_members(P, lams):
    x = [max(l + v[k] for l, v in zip(lams, P)) for k in range(3)]
    assert contains(P, x)
    assert project_onto(P, x) == point(*x)


@settings(max_examples=200)
@given(polytopes(p_min=1, p_max=5), points(3, st.integers(-8, 8)))
def test_project_onto_is_idempotent_and_lands_in_p(P, x):
    y = project_onto(P, x)
    assert project_onto(P, y) == y
    assert contains(P, y)
    assert contains(P, x) == member([v.coords for v in P], x.coords)


# -- types and cells ------------------------------------------------------------------

def test_types_of_reference_points():
    assert one_based(type_of(FOUR, (0, 3, 3))) == fs({1, 2}, {2, 3}, {1, 4})
    assert one_based(type_of(FOUR, (0, 5, 1))) == fs({2}, {3}, {1, 2, 3, 4})


def test_type_of_eleven_point_apex():
    P = builtin("eleven_point_tp4").polytope()
    a = ("0", "2.5176", "10.9971", "10.5037", "9.5007")
    assert one_based(type_of(P, a)) == fs({1, 8}, {1, 2, 3, 4}, {3, 5}, {8, 9, 10, 11},
                                          {5, 6, 7})


def test_cell_dimension_examples():
    assert cell_dimension(fs({0}, {0}, {0})) == 0
    assert cell_dimension(fs({0, 1}, {1, 2}, {0, 3})) == 0
    assert cell_dimension(fs({0, 1}, {2}, {3})) == 2
    assert cell_dimension(fs({0, 1}, {1}, {3})) == 1


@settings(max_examples=200)
@given(polytopes(p_min=1, p_max=6), points(3, st.integers(-8, 8)))
def test_every_generator_has_a_sector(P, a):
    S = type_of(P, a)
    assert frozenset().union(*S) == frozenset(range(P.p))
    assert S == type_vector([v.coords for v in P], a.coords)


# -- extreme points and purity ----------------------------------------------------------

def test_extreme_points_of_four_point_polytope():
    assert extreme_points(FOUR).types == fs({0}, {0}, {1}, {2})
    assert is_pure(FOUR)


def test_extreme_points_of_non_pure_polytope():
    types = extreme_points(DIAGONAL).types
    # sector-emptiness by brute force
    gens = [v.coords for v in DIAGONAL]
    expected = tuple(frozenset(i for i in range(3)
                               if not any(all(w[i] - v[i] >= w[k] - v[k] for k in range(3))
                                          for s, w in enumerate(gens) if s != r))
                     for r, v in enumerate(gens))
    assert types == expected == fs({0, 2}, {0}, {0, 1})
    assert not is_pure(DIAGONAL)


def test_single_generator_is_extreme_of_every_type():
    P = TropicalPolytope([(0, 1, 2)])
    assert extreme_points(P).types == fs({0, 1, 2})
    assert not is_pure(P)
    assert enumerate_pseudovertices(P) == [point(0, 1, 2)]


def test_simplex_is_pure():
    assert is_pure(SIMPLEX)


@settings(max_examples=60)
@given(polytopes(p_min=1, p_max=6))
def test_purity_matches_triangulation_oracle(P):
    assert is_pure(P) == pure_by_triangulation([v.coords for v in P])


@settings(max_examples=100)
@given(polytopes(n=4, p_min=1, p_max=5))
def test_extremality_flag_matches_membership(P):
    report = extreme_points(P)
    for r in range(P.p):
        others = [v.coords for s, v in enumerate(P) if s != r]
        assert report.extreme[r] == (not others or not member(others, P[r].coords))


# -- pseudovertices -----------------------------------------------------------------------

def test_pseudovertices_of_four_point_polytope():
    pv = enumerate_pseudovertices(FOUR)
    assert len(pv) == 10
    for a in list(FOUR) + [point(0, 3, 3), point(0, 5, 1), point(0, 6, 5), point(0, 1, 4)]:
        assert a in pv
    assert pv == sorted(pv)


def test_unlabelled_pseudovertices_come_from_the_tree_oracle():
    labelled = set(FOUR) | {point(0, 3, 3), point(0, 5, 1), point(0, 6, 5), point(0, 1, 4)}
    oracle = [point(*a) for a in pseudovertices_by_trees([v.coords for v in FOUR])]
    extra = sorted(set(oracle) - labelled)
    assert extra == [point(0, 3, 5), point(0, 6, 3)]
    assert sorted(set(enumerate_pseudovertices(FOUR)) - labelled) == extra


@settings(max_examples=60)
@given(st.integers(3, 4).flatmap(lambda n: polytopes(n=n, p_min=1, p_max=5 if n == 3 else 4)))
def test_pseudovertices_match_spanning_tree_oracle(P):
    expected = [point(*a) for a in pseudovertices_by_trees([v.coords for v in P])]
    assert enumerate_pseudovertices(P) == sorted(expected)


def test_pseudovertex_budget():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_pseudovertices(FOUR, max_states=3)
    assert "states" in info.value.counts
    with pytest.raises(BudgetExceeded):
        enumerate_pseudovertices(FOUR, max_n=2)


# -- (I, j)-pseudovertices and the canonical representation -------------------------------

def test_ij_pseudovertex_examples():
    assert is_Ij_pseudovertex(FOUR, (0, 3, 3), {1, 2}, 0)
    assert is_Ij_pseudovertex(DIAGONAL, (0, -1, 1), {1}, 0)
    assert is_Ij_pseudovertex(DIAGONAL, (0, -1, 1), {1}, 2)
    with pytest.raises(ValidationError):
        is_Ij_pseudovertex(FOUR, (0, 3, 3), {1, 2}, 1)
    with pytest.raises(ValidationError):
        is_Ij_pseudovertex(FOUR, (0, 3, 3), set(), 0)


def test_eleven_point_apex_is_not_an_ij_pseudovertex():
    P = builtin("eleven_point_tp4").polytope()
    a = ("0", "2.5176", "10.9971", "10.5037", "9.5007")
    for I in ({1, 3, 4}, {1, 2, 3, 4}, {0, 1, 3, 4}):
        for j in (0, 2):
            if j not in I:
                assert not is_Ij_pseudovertex(P, a, I, j)


def test_ij_pseudovertex_apices_of_four_point_polytope():
    apices = {c.apex for c in ij_pseudovertices(FOUR)}
    assert apices == {point(0, 3, 3), point(0, 5, 1), point(0, 6, 5), point(0, 1, 4)}


def test_canonical_representation_of_four_point_polytope():
    rep = canonical_representation(FOUR)
    assert set(rep) == {halfspace((0, 3, 3), {1, 2}), halfspace((0, 5, 1), {2}),
                        halfspace((0, 6, 5), {0}), halfspace((0, 1, 4), {1})}
    assert len(rep) == 4


def test_canonical_representation_of_simplex_contains_generators():
    rep = canonical_representation(SIMPLEX)
    assert rep
    assert all(H.contains(v) for H in rep for v in SIMPLEX)


def test_canonical_representation_requires_purity():
    with pytest.raises(PreconditionError, match="generator 0"):
        canonical_representation(DIAGONAL)


@settings(max_examples=40)
@given(polytopes(p_min=2, p_max=6))
def test_canonical_representation_contains_generators(P):
    assume(is_pure(P))
    for H in canonical_representation(P):
        assert all(H.contains(v) for v in P)


def test_witnesses_of_four_point_polytope():
    assert witness_extreme_points(FOUR, (0, 3, 3), {1, 2}, 0) == {1: 1, 2: 0}
    assert witness_extreme_points(FOUR, (0, 5, 1), {2}, 1) == {0: 1, 2: 2}


def test_witness_requires_ij_pseudovertex():
    with pytest.raises(PreconditionError):
        witness_extreme_points(FOUR, (0, 3, 3), {1}, 0)


@settings(max_examples=40)
@given(polytopes(p_min=2, p_max=6))
def test_witnesses_are_distinct_extreme_and_on_the_boundary(P):
    assume(is_pure(P))
    report = extreme_points(P)
    for c in ij_pseudovertices(P):
        w = witness_extreme_points(P, c.apex, c.I, c.j, report)
        assert sorted(w) == sorted(set(range(P.n)) - {c.j})
        assert len(set(w.values())) == P.n - 1
        for k, r in w.items():
            assert report.types[r] == frozenset({c.j if k in c.I else k})
            assert c.halfspace.on_boundary(P[r])

