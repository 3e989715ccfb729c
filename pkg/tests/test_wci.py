from collections import Counter
from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lgcompact.errors import NonFanoError, NotNiceError, SearchCapExceeded
from lgcompact.laurent import newton_polytope, parse_laurent, period_sequence
from lgcompact.polytope import convex_hull, polar_dual
from lgcompact.wci import (
    ambient_product,
    anticanonical_sections,
    closed_form_period,
    covering_model,
    dual_matrix,
    find_nef_partitions,
    givental_polynomial,
    iseries,
    make_model,
    make_partition,
    nice_partition,
    variable_labeling,
)


def test_model_invariants():
    m = make_model((1, 1, 1, 1, 3), (6,))
    assert (m.index, m.dim, m.codim) == (1, 3, 1)
    assert m.spec() == "wci:1,1,1,1,3;6"


def test_model_rejections():
    with pytest.raises(NonFanoError):
        make_model((1, 1, 1, 1), (4,))
    with pytest.raises(ValueError):
        make_model((1, 1, 1), (1,))
    with pytest.raises(ValueError):
        make_model((0, 1, 1), ())
    with pytest.raises(ValueError):
        make_model((2, 2), (2,))


def test_partition_validation():
    m = make_model((1, 1, 1, 2), (4,))
    with pytest.raises(ValueError):
        make_partition(m, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        make_partition(m, [(0,), (1, 2)])
    p = make_partition(m, [(0,), (1, 2, 3)])
    assert p.distinguished == (0, 3) and p.nice and p.strong


def test_one_class_for_sextic_double_solid():
    parts = find_nef_partitions(make_model((1, 1, 1, 1, 3), (6,)))
    assert len(parts) == 1
    assert parts[0].describe() == "I_0={1} I_1={3,1,1,1}"
    assert parts[0].nice and parts[0].strong


def test_nice_but_not_strong_class():
    parts = find_nef_partitions(make_model((1, 1, 1, 1, 2, 2, 3), (4, 6)))
    assert [p.strong for p in parts] == [True, True, False]
    assert all(p.nice for p in parts)
    assert parts[2].describe() == "I_0={1} I_1={3,1} I_2={2,2,1,1}"


def test_no_nice_partition():
    m = make_model((2, 2), (2,), min_dim=0)
    parts = find_nef_partitions(m)
    assert parts and not any(p.nice for p in parts)
    with pytest.raises(NotNiceError):
        nice_partition(m)
    with pytest.raises(NotNiceError):
        givental_polynomial(m, parts[0])


def test_search_cap():
    with pytest.raises(SearchCapExceeded):
        find_nef_partitions(make_model((1,) * 25, (2,)))


def test_dp3_polynomial():
    m = make_model((1, 1, 1, 1), (3,))
    g = givental_polynomial(m, nice_partition(m))
    assert g.polynomial == parse_laurent("(1+x1+x2)^3/(x1*x2)")
    assert period_sequence(g.polynomial, 4) == [1, 6, 90, 1680]
    assert ambient_product(g.partition) == (2,)


def test_projective_plane_matrix_has_extra_row():
    m = make_model((1, 1, 1), ())
    p = nice_partition(m)
    rows = dual_matrix(m, p)
    assert [r.entries for r in rows] == [(2, -1), (-1, 2), (-1, -1)]
    f = givental_polynomial(m, p).polynomial
    assert convex_hull([r.entries for r in rows]) == polar_dual(newton_polytope(f))


def test_covering_matrix():
    m, p, g = covering_model(2, 3)
    rows = dual_matrix(m, p)
    third = Fraction(-1, 3)
    assert [r.entries for r in rows] == [(1, 0, 0), (0, 1, 0), (0, 0, 1), (third,) * 3]


def test_labeling_order():
    m = make_model((1, 1, 1, 1, 1, 1), (2, 2))
    p = nice_partition(m)
    parts = [part for part, _, _ in variable_labeling(p)]
    assert parts == sorted(parts, key=lambda i: (i == 0, i))


def test_closed_form_reference():
    m = make_model((1, 1, 1, 1, 3), (6,))
    assert closed_form_period(m, 1) == 120
    assert closed_form_period(m, 2) == Fraction(factorial(12) * 2, factorial(6) * 2 ** 4)


def test_anticanonical_sections():
    assert anticanonical_sections(make_model((1, 1, 2, 3), (6,))) == 2


# properties: random small Fano complete intersections


@st.composite
def fano_models(draw):
    k = draw(st.integers(0, 2))
    n = draw(st.integers(3, 6))
    weights = tuple(sorted(draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))))
    degrees = tuple(draw(st.lists(st.integers(2, 6), min_size=k, max_size=k)))
    try:
        m = make_model(weights, degrees)
    except ValueError:
        assume(False)
    assume(1 <= m.dim <= 3)
    return m


@settings(max_examples=40, deadline=None)
@given(fano_models())
def test_partitions_are_nef(m):
    for p in find_nef_partitions(m):
        assert [sum(m.weights[j] for j in part) for part in p.parts] == \
            [m.index] + list(m.degrees)
        assert not p.strong or p.nice


@settings(max_examples=40, deadline=None)
@given(fano_models())
def test_search_is_exhaustive(m):
    """Compare with a search over all assignments of indices to parts."""
    ours = {p.signature() for p in find_nef_partitions(m)}
    k = m.codim
    targets = [m.index] + list(m.degrees)
    brute = set()
    for labels in product(range(k + 1), repeat=len(m.weights)):
        parts = [[m.weights[j] for j in range(len(m.weights)) if labels[j] == i]
                 for i in range(k + 1)]
        if [sum(p) for p in parts] != targets:
            continue
        sig = [tuple(sorted(p, reverse=True)) for p in parts]
        rest = sorted(zip(m.degrees, sig[1:]))
        brute.add((sig[0], tuple(s for _, s in rest)))
    ours_norm = {(s[0], tuple(x for _, x in sorted(zip(m.degrees, s[1:])))) for s in ours}
    assert ours_norm == brute


@settings(max_examples=30, deadline=None)
@given(fano_models())
def test_periods_match_closed_form(m):
    parts = [p for p in find_nef_partitions(m) if p.nice]
    assume(parts)
    f = givental_polynomial(m, parts[0]).polynomial
    assume(len(f) <= 60)
    n = min(7, 2 * m.index + 1)
    assert period_sequence(f, n) == iseries(m, n)


@settings(max_examples=30, deadline=None)
@given(fano_models())
def test_dual_matrix_hull(m):
    parts = [p for p in find_nef_partitions(m) if p.nice]
    assume(parts)
    for p in parts:
        f = givental_polynomial(m, p).polynomial
        rows = [r.entries for r in dual_matrix(m, p)]
        assert convex_hull(rows) == polar_dual(newton_polytope(f))


def test_sections_count_unit_weights():
    m = make_model((1, 1, 1, 1, 1, 2), (6,))
    assert anticanonical_sections(m) == Counter(m.weights)[1]
