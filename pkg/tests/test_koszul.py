import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint import GradedIdeal, create_ring
from resint.hilbert import HilbertSeries
from resint.koszul import (
    KoszulData,
    check_G_minus,
    check_Gs,
    check_SCM,
    check_SD,
    check_SDC,
    check_tail_cycle_depths,
    classify_depth_Ztop,
    fitting_heights,
)
from resint.ring import Field

from .conftest import homogeneous

R = create_ring(Field(32003), ["x", "y", "z"])


def euler_numerator(degrees):
    num = {0: 1}
    for d in degrees:
        nxt = dict(num)
        for e, v in num.items():
            nxt[e + d] = nxt.get(e + d, 0) - v
        num = {k: v for k, v in nxt.items() if v}
    return num


def test_differential_squares_to_zero(twisted_cubic):
    S, I = twisted_cubic
    K = KoszulData(list(I.generators))
    assert K.complex.is_complex()
    assert [K.differential(i).ncols for i in range(1, 4)] == [3, 3, 1]


def test_regular_sequence_depths():
    K = KoszulData([R.parse(x) for x in ["x^2", "y^2 + x*z", "z^3"]])
    assert K.g == 3
    for i in (1, 2, 3):
        assert K.homology(i).is_zero()
    # exactness gives depth Z_i = d - r + i + 1 in the interior, Z_0 free
    assert K.depth_of("Z", 0) == 3
    assert K.depth_of("Z", 1) == 2 and K.depth_of("Z", 2) == 3
    assert K.depth_of("Z", 3) == math.inf
    assert check_SD(K, 1, 3).passed and check_SDC(K, 1, 3).passed


def test_cohen_macaulay_height_two_is_scm(twisted_cubic):
    S, I = twisted_cubic
    K = KoszulData(list(I.generators))
    assert check_SCM(K)["pass"]
    z = classify_depth_Ztop(K)
    assert z["depth"] == 4 and z["expected"] == 4 and z["match"]
    assert all(row["match"] for row in check_tail_cycle_depths(K))


def test_generic_minors_ztop_depth(generic_2x3):
    S, I = generic_2x3
    z = classify_depth_Ztop(KoszulData(list(I.generators)))
    assert z["depth"] == 6 and z["match"]


def test_non_cm_failure_shows_up():
    # (x^2, x*y): H_0 has an embedded point, so SCM fails
    K = KoszulData([R.parse("x^2"), R.parse("x*y")])
    assert not check_SCM(K)["pass"]
    assert classify_depth_Ztop(K)["case"] == "g=1 or regular sequence"


def test_fitting_conditions():
    m = GradedIdeal(R, ["x", "y", "z"])
    assert fitting_heights(m, 2) == {1: 3, 2: 3}
    assert check_Gs(m, 3) and check_G_minus(m, 3)
    # (x, y)^2 needs three generators at the height-two prime (x, y)
    sq = GradedIdeal(R, ["x^2", "x*y", "y^2"])
    assert fitting_heights(sq, 2) == {1: 2, 2: 2}
    assert check_Gs(sq, 2) and not check_Gs(sq, 3)
    # the weak condition allows one extra generator locally
    assert check_G_minus(sq, 3)
    cube = GradedIdeal(R, ["x^3", "x^2*y", "x*y^2", "y^3"])
    assert not check_G_minus(cube, 3)
    with pytest.raises(ValueError):
        check_Gs(m, 0)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        KoszulData([])
    with pytest.raises(ValueError):
        KoszulData([R.parse("x + y^2")])


@settings(max_examples=12, deadline=None)
@given(st.lists(homogeneous(R, 2, max_terms=3), min_size=2, max_size=3))
def test_homology_euler_characteristic(gens):
    gens = [g for g in gens if not g.is_zero()]
    if len(gens) < 2:
        return
    K = KoszulData(gens)
    assert K.complex.is_complex()
    total = HilbertSeries.zero(R.weights)
    for i in range(K.r + 1):
        h = K.homology(i).hilbert_series()
        total = total + h if i % 2 == 0 else total - h
    assert total == HilbertSeries(euler_numerator(K.degrees), R.weights)
