from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lgcompact.errors import DuplicateRayError, NotFullDimensionalError, OriginNotInteriorError
from lgcompact.polytope import (
    convex_hull,
    givental_toric_polynomial,
    integral_boundary_points,
    integral_points,
    interior_points,
    is_reflexive,
    parse_vertex_list,
    polar_dual,
    polytope_from_json,
    rank,
)
from oracles import facets_by_enumeration, vertices_by_enumeration

F = Fraction


def square():
    return convex_hull([(1, 1), (1, -1), (-1, 1), (-1, -1), (0, 0), (1, 0)])


def test_square_hull():
    P = square()
    assert P.vertex_set() == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert {(f.normal, f.offset) for f in P.facets} == {
        ((1, 0), -1), ((-1, 0), -1), ((0, 1), -1), ((0, -1), -1)}


def test_square_dual_is_diamond():
    D = polar_dual(square())
    assert D.vertex_set() == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert is_reflexive(square())


def test_rational_dual():
    P = convex_hull([(-1, -1), (3, -1), (-1, 3)])
    D = polar_dual(P)
    assert D.vertex_set() == {(1, 0), (F(-1, 2), F(-1, 2)), (0, 1)}
    assert not is_reflexive(P)
    assert is_reflexive(convex_hull([(-1, -1), (3, -1), (-1, 1)]))


def test_degenerate_inputs():
    with pytest.raises(NotFullDimensionalError):
        convex_hull([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(NotFullDimensionalError):
        convex_hull([])
    with pytest.raises(OriginNotInteriorError):
        polar_dual(convex_hull([(0, 0), (1, 0), (0, 1)]))


def test_lattice_points_of_triangle():
    P = convex_hull([(-1, -1), (2, -1), (-1, 2)])
    assert len(integral_points(P)) == 10
    assert interior_points(P) == [(0, 0)]
    assert len(integral_boundary_points(P)) == 9


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[F(1, 2), 0, 1], [0, 1, 0], [1, 1, 2]]) == 2


def test_vertex_list_and_json():
    pts = parse_vertex_list("1,0; 0,1; -1/2,-1/2")
    assert pts[2] == (F(-1, 2), F(-1, 2))
    P = convex_hull(pts)
    assert polytope_from_json(P.to_json()) == P
    assert P.to_json()["vertices"] == [["-1/2", "-1/2"], ["0", "1"], ["1", "0"]]


def test_toric_polynomial():
    f = givental_toric_polynomial([(1, 0), (0, 1), (-1, -1)])
    assert len(f) == 3
    with pytest.raises(DuplicateRayError):
        givental_toric_polynomial([(1, 0), (1, 0)])
    with pytest.raises(ValueError):
        givental_toric_polynomial([(2, 0)])


def test_cube_hull_in_dim_four():
    pts = list(product((-1, 1), repeat=4)) + [(0, 0, 0, 0)]
    P = convex_hull(pts)
    assert len(P.vertices) == 16 and len(P.facets) == 8
    assert len(polar_dual(P).vertices) == 8


# properties

points = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                  min_size=4, max_size=9)


def _full(pts):
    try:
        return convex_hull(pts)
    except NotFullDimensionalError:
        return None


@settings(max_examples=60, deadline=None)
@given(points)
def test_hull_matches_enumeration(pts):
    P = _full(pts)
    assume(P is not None)
    assert P.vertex_set() == vertices_by_enumeration(pts)
    oracle = facets_by_enumeration(pts)
    ours = set()
    for f in P.facets:
        s = max(abs(x) for x in f.normal)
        ours.add((tuple(F(x, s) for x in f.normal), F(f.offset) / s))
    assert ours == oracle


@settings(max_examples=60, deadline=None)
@given(points)
def test_hull_contains_inputs(pts):
    P = _full(pts)
    assume(P is not None)
    assert all(P.contains(p) for p in pts)
    assert P.vertex_set() <= set(tuple(F(x) for x in p) for p in pts)


def _with_interior_origin(dim):
    unit = [tuple(s if i == j else 0 for j in range(dim)) for i in range(dim) for s in (1, -1)]
    extra = st.lists(st.tuples(*[st.integers(-2, 2)] * dim), max_size=6)
    return extra.map(lambda e: unit + e)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(_with_interior_origin))
def test_dual_is_involution(pts):
    P = convex_hull(pts)
    assert polar_dual(polar_dual(P)) == P


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(_with_interior_origin))
def test_boundary_points_by_facets(pts):
    P = convex_hull(pts)
    facets = facets_by_enumeration(pts)
    lo = [min(p[i] for p in pts) for i in range(P.dim)]
    hi = [max(p[i] for p in pts) for i in range(P.dim)]
    expected = []
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        vals = [(sum(a * b for a, b in zip(n, x)), c) for n, c in facets]
        if all(v >= c for v, c in vals) and any(v == c for v, c in vals):
            expected.append(x)
    assert integral_boundary_points(P) == expected
