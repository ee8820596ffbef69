import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint import GradedIdeal, create_ring, ideal_quotient, intersect
from resint.groebner import QuotientDescriptor, fitting_ideal, graded_piece_dim, ideal_power, minors
from resint.maps import GradedMap
from resint.oracle import hilbert_function, member, quotient_piece, same_piece
from resint.ring import Field

from .conftest import homogeneous

R = create_ring(Field(32003), ["x", "y", "z"])


def test_gb_of_twisted_cubic_matches_oracle(twisted_cubic):
    S, I = twisted_cubic
    hs = I.hilbert_series
    for d in range(7):
        assert hs.coefficient(d) == hilbert_function(S, I.generators, d)
    # 3d + 1 points per degree on the curve
    assert hs.coefficients(1, 6) == [4, 7, 10, 13, 16, 19]
    assert I.dimension() == 2 and I.height() == 2


def test_membership_and_normal_form(link):
    S, I, a = link
    f = S.parse("x^3 - y^3")
    assert I.contains(f) == member(f, I.generators)
    g = S.parse("x^2*y + z^3")
    assert I.contains(g) == member(g, I.generators)
    assert I.contains(I.normal_form(g) - g)


def test_unit_and_zero_ideals():
    assert GradedIdeal(R, ["1"]).is_unit()
    Z = GradedIdeal(R, [])
    assert Z.is_zero() and Z.height() == 0
    assert GradedIdeal(R, ["1"]).height() == math.inf


def test_intersection_of_coordinate_ideals():
    A = GradedIdeal(R, ["x", "y"])
    B = GradedIdeal(R, ["y", "z"])
    C = intersect(A, B)
    assert C.same_as(GradedIdeal(R, ["y", "x*z"]))


def test_quotient_by_oracle(link):
    S, I, a = link
    J = ideal_quotient(a, I)
    for d in range(5):
        expect = quotient_piece(S, a.generators, I.generators, d)
        assert same_piece(S, J.generators, expect, d)


def test_power_and_minimal_generators():
    m = GradedIdeal(R, ["x", "y", "z"])
    assert len(ideal_power(m, 3).minimal_generators) == 10
    J = GradedIdeal(R, ["x", "x^2", "x*y", "y"])
    assert len(J.minimal_generators) == 2


def test_piece_dims():
    I = GradedIdeal(R, ["x^2", "y^2"])
    assert graded_piece_dim(R, 2) == 6
    assert graded_piece_dim(I, 2) == 2
    assert graded_piece_dim(QuotientDescriptor(None, I), 2) == 4
    # (x) / (x^2, y^2) ∩ ...: top = (x), bottom = (x^2, x*y)
    q = QuotientDescriptor(GradedIdeal(R, ["x"]), GradedIdeal(R, ["x^2", "x*y"]))
    assert [graded_piece_dim(q, d) for d in range(4)] == [0, 1, 1, 1]


def test_minors_and_fitting():
    psi = GradedMap.from_columns(R, [0, 0, 0], [[R.parse("x"), R.parse("y"), R.zero()], [R.zero(), R.parse("x"), R.parse("y")]])
    m2 = minors(psi, 2)
    assert len(m2) == 3
    # a 3 x 2 matrix has no 3-minors
    assert fitting_ideal(psi, 0).is_zero()
    assert fitting_ideal(psi, 1).same_as(GradedIdeal(R, ["x^2", "x*y", "y^2"]))
    assert fitting_ideal(psi, 3).is_unit()
    with pytest.raises(ValueError):
        fitting_ideal(psi, -1)


@settings(max_examples=15, deadline=None)
@given(st.lists(homogeneous(R, 2, max_terms=3), min_size=1, max_size=3))
def test_hilbert_function_agrees_with_oracle(gens):
    I = GradedIdeal(R, gens)
    for d in range(5):
        assert I.hilbert_series.coefficient(d) == hilbert_function(R, I.generators, d)


@settings(max_examples=15, deadline=None)
@given(st.lists(homogeneous(R, 1, max_terms=2), min_size=1, max_size=2), st.lists(homogeneous(R, 2, max_terms=2), min_size=1, max_size=2))
def test_intersection_properties(A, B):
    IA, IB = GradedIdeal(R, A), GradedIdeal(R, B)
    C = intersect(IA, IB)
    assert IA.contains_ideal(C) and IB.contains_ideal(C)
    assert C.contains_ideal(IA * IB)
    # inclusion-exclusion on Hilbert functions
    S = IA + IB
    for d in range(4):
        assert (
            hilbert_function(R, C.generators, d) + hilbert_function(R, S.generators, d)
            == hilbert_function(R, IA.generators, d) + hilbert_function(R, IB.generators, d)
        )


@settings(max_examples=15, deadline=None)
@given(st.lists(homogeneous(R, 2, max_terms=3), min_size=1, max_size=2), st.lists(homogeneous(R, 1, max_terms=2), min_size=1, max_size=2))
def test_quotient_properties(agens, Igens):
    a, I = GradedIdeal(R, agens), GradedIdeal(R, Igens)
    J = ideal_quotient(a, I)
    assert J.contains_ideal(a)
    assert a.contains_ideal(J * I)
    for d in range(4):
        assert same_piece(R, J.generators, quotient_piece(R, a.generators, I.generators, d), d)
