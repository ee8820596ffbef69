from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resint import GradedIdeal, create_ring
from resint.corpus import _entry_by_name
from resint.groebner import ideal_power
from resint.resolve import Presentation, ext_module
from resint.residual import (
    ResidualError,
    beg_formula,
    build_residual,
    canonical_module_check,
    complex_shapes,
    ideal_hash,
    intersection_is_a,
    regularity_bound,
    residual_report,
    shape_tables,
    verify_cm_conclusion,
)
from resint.ring import Field
from resint.oracle import member


def test_link_of_twisted_cubic_cone(link):
    R, I, a = link
    data = build_residual(a, I)
    assert (data.s, data.g, data.sigma_a, data.beg_I_mod_a) == (2, 2, 4, 2)
    assert data.J.same_as(GradedIdeal(R, ["x", "y"]))
    assert data.flags["is_residual"] and data.flags["is_geometric"]
    bound, actual, holds, tight = regularity_bound(data)
    # linkage: 4 - 1*2 - 2
    assert (bound, actual, holds, tight) == (0, 0, True, True)
    cm = verify_cm_conclusion(data)
    assert cm["status"] == "verified" and cm["conclusion_holds"]


def test_residual_containments(link):
    R, I, a = link
    data = build_residual(a, I)
    for j in data.J.generators:
        assert all(member(j * i, a.generators) for i in I.generators)
    for x in a.generators:
        assert member(x, data.J.generators)
    assert intersection_is_a(data)


def test_trivial_residual_gives_sentinel(link):
    R, I, _ = link
    data = build_residual(I, I)
    assert data.trivial and data.J.is_unit()
    assert regularity_bound(data) == (None, None, None, None)
    assert verify_cm_conclusion(data)["status"] == "hypotheses fail"


def test_height_deficient_input_makes_no_claim():
    R = create_ring(Field(32003), list("xyzw"))
    I = GradedIdeal(R, ["x", "y", "z"])
    a = GradedIdeal(R, ["x*w", "y*w"])
    data = build_residual(a, I)
    assert data.s < data.g
    assert not data.flags["is_residual"]
    assert regularity_bound(data) == (None, None, None, None)
    assert verify_cm_conclusion(data)["status"] == "hypotheses fail"
    rep = residual_report(data)
    assert rep["cm"]["status"] == "hypotheses fail"


def test_rejects_a_outside_I(link):
    R, I, _ = link
    with pytest.raises(ResidualError):
        build_residual(GradedIdeal(R, ["x^2"]), I)


def test_non_minimal_a_is_reminimized(link):
    R, I, a = link
    extra = a.generators[0] * R.parse("x")
    with pytest.warns(UserWarning, match="not minimal"):
        data = build_residual(GradedIdeal(R, list(a.generators) + [extra]), I)
    assert data.s == 2 and data.sigma_a == 4


def test_ideal_hash_depends_on_generators(link):
    R, I, a = link
    assert ideal_hash(I) == ideal_hash(GradedIdeal(R, list(I.generators)))
    assert ideal_hash(I) != ideal_hash(a)


def test_canonical_module_for_link(link):
    R, I, a = link
    rep = canonical_module_check(build_residual(a, I))
    assert rep["status"] == "compared" and rep["match"] and rep["series_equal"]


def test_canonical_requires_hypotheses():
    R = create_ring(Field(32003), list("xyzw"))
    I = GradedIdeal(R, ["x", "y", "z"])
    a = GradedIdeal(R, ["x*w", "y*w"])
    assert canonical_module_check(build_residual(a, I))["status"] == "inconclusive"


def test_canonical_exponent_is_load_bearing():
    entry = _entry_by_name("twisted_cubic_s3")
    R, I, a = entry.ideals()
    data = build_residual(a, I)
    assert data.s == data.g + 1
    assert canonical_module_check(data)["match"]
    # the same comparison with exponent s-g instead of s-g+1 breaks
    b = -sum(R.weights)
    omega = ext_module(Presentation.quotient_ring(data.J), data.s).hilbert_series().shift(-b)
    Iw = ideal_power(data.I, data.s - data.g)
    wrong = (data.J.hilbert_series - (Iw + data.J).hilbert_series).shift(-(b + data.sigma_a))
    assert omega.coefficients(-4, 12) != wrong.coefficients(-4, 12)


# -- bookkeeping tables -------------------------------------------------------

def test_beg_formula_examples():
    assert [beg_formula(3, 2, 2, i) for i in range(5)] == [0, 1, 2, 3, 4]
    assert [beg_formula(4, 2, 3, i) for i in range(7)] == [0, 1, 2, 3, 4, 5, 6]
    assert [beg_formula(4, 3, 3, i) for i in range(7)] == [0, 1, 2, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        beg_formula(3, 2, 2, 5)


def test_shape_matches_formula_when_g_at_least_two():
    for r in range(2, 9):
        for g in range(2, r + 1):
            for s in range(g, 9):
                assert shape_tables(r, g, s).beg_mismatches() == [], (r, g, s)


@given(st.integers(1, 8).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r))).flatmap(
    lambda rg: st.tuples(st.just(rg[0]), st.just(rg[1]), st.integers(rg[1], 8))))
def test_beg_never_exceeds_top(rgs):
    r, g, s = rgs
    sh = shape_tables(r, g, s)
    for i in sh.d:
        assert sh.beg[i] <= sh.top[i] == i
        # ranks of D_i sum over Koszul index of C(s, j) copies
        assert all(x["mult"] == comb(s, x["koszul_index"]) for x in sh.d[i])


def test_g_one_tail_has_no_free_modules():
    for r in range(1, 7):
        for s in range(1, 7):
            sh = shape_tables(r, 1, s)
            assert all(not x["free"] for p in sh.z_prime.values() for x in p)
            assert sh.z_plus[r - 1] == [(f"Z_{r - 1}", comb(r + s - 2, r - 1))]


def test_complete_intersection_is_truncated_koszul_tail():
    sh = shape_tables(3, 3, 3)
    assert sh.z_prime[0][0]["module"] == "Z_0"
    for p in (1, 2):
        assert all(x["free"] and x["module"] == f"K_{p + 1}" for x in sh.z_prime[p])
        assert [x["shift"] for x in sh.z_prime[p]] == list(range(1, p + 1))


def test_shape_parameter_checks(link):
    with pytest.raises(ValueError):
        shape_tables(2, 3, 3)
    with pytest.raises(ValueError):
        shape_tables(3, 2, 1)
    R, I, _ = link
    sh = complex_shapes(list(I.generators), [2, 2])
    assert (sh.r, sh.g, sh.s) == (3, 2, 2) and sh.a_degrees == (2, 2)
    assert sh.to_json()["beg_D"] == {str(i): i for i in range(5)}
