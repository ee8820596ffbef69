from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint import create_ring
from resint.ring import Field, ParseError, RingError

from .conftest import homogeneous

RQ = create_ring(Field(0), ["x", "y", "z"])
RP = create_ring(Field(7), ["x", "y", "z"])


def test_field_rejects_composite_characteristic():
    with pytest.raises(RingError):
        Field(12)


def test_prime_field_arithmetic():
    F = Field(7)
    assert F(10) == 3
    assert F.mul(F.inv(3), 3) == 1
    assert F(Fraction(1, 2)) == 4


def test_rational_constant_not_in_field():
    with pytest.raises(ParseError, match="not in field"):
        RP.parse("1/7*x")


def test_parse_and_print_canonical():
    f = RQ.parse("3/2*x^2 - x*y - 1/3*y*z")
    assert str(f) == "3/2*x^2 - x*y - 1/3*y*z"
    assert f.degree() == 2 and f.is_homogeneous()


@pytest.mark.parametrize(
    "text, msg",
    [("xz - y^2", "unknown variable"), ("2x", "juxtaposition"), ("x +", "malformed|unexpected"), ("x^-1", "exponent")],
)
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        RQ.parse(text)


def test_weighted_degree():
    R = create_ring(Field(0), ["x", "y"], weights=[1, 2])
    f = R.parse("x^2 + y")
    assert f.is_homogeneous() and f.degree() == 2
    assert R.dim_piece(4) == 3


def test_bad_rings():
    with pytest.raises(RingError):
        create_ring(Field(0), ["x", "x"])
    with pytest.raises(RingError):
        create_ring(Field(0), ["x"], weights=[0])
    with pytest.raises(RingError):
        create_ring(Field(0), ["x"], order="weird")


def test_monomials_sorted_descending_degrevlex():
    monos = RQ.monomials_of_degree(2)
    assert len(monos) == 6
    assert monos[0] == (2, 0, 0) and monos[-1] == (0, 0, 2)
    # degrevlex: x*z < y^2
    assert monos.index((0, 2, 0)) < monos.index((1, 0, 1))


def test_exact_division():
    f = RQ.parse("x^2 - y^2")
    g = RQ.parse("x - y")
    assert f.divide_exact(g) == RQ.parse("x + y")
    with pytest.raises(ArithmeticError):
        RQ.parse("x^2 + y^2").divide_exact(g)


@settings(max_examples=60, deadline=None)
@given(homogeneous(RQ, 2), homogeneous(RQ, 2), homogeneous(RQ, 1))
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f - f).is_zero()


@settings(max_examples=60, deadline=None)
@given(homogeneous(RQ, 3, coeffs=st.fractions(-3, 3, max_denominator=5)))
def test_print_parse_round_trip(f):
    assert RQ.parse(str(f)) == f


@settings(max_examples=40, deadline=None)
@given(homogeneous(RQ, 2), homogeneous(RQ, 1))
def test_product_divides_back(f, g):
    if g.is_zero():
        return
    assert (f * g).divide_exact(g) == f
