from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resint import GradedIdeal, create_ring, ideal_quotient
from resint.corpus import _entry_by_name
from resint.en import (
    HypothesisError,
    alternating_sum,
    alternating_sum_nonzero,
    beta,
    beta_by_derivatives,
    beta_table,
    eagon_northcott,
    en_basis,
    en_counts,
    en_exactness,
    en_regularity,
    en_shape,
    f_profile_ok,
    hilbert_burch,
    mapping_cone_presentation,
    max_minors,
    refined_strict_prediction,
)
from resint.ring import Field


def stirling2(n, k):
    S = [[0] * (k + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for a in range(1, n + 1):
        for b in range(1, k + 1):
            S[a][b] = b * S[a - 1][b] + S[a - 1][b - 1]
    return S[n][k]


# -- combinatorics -------------------------------------------------------------

def test_beta_small_value():
    assert beta(2, 2) == 2
    assert beta(1, 0) == 0 and beta(1, 1) == 1


@pytest.mark.parametrize("m", range(1, 11))
def test_beta_equals_surjection_count(m):
    # signed binomial sums of j^t count surjections onto an m-set
    for t in range(16):
        assert beta(m, t) == factorial(m) * stirling2(t, m)


@settings(max_examples=80)
@given(st.integers(1, 10), st.integers(0, 15))
def test_beta_two_routes_agree(m, t):
    assert beta(m, t) == beta_by_derivatives(m, t)


def test_beta_table_shape_and_errors():
    tab = beta_table(4, 6)
    assert sorted(tab) == [1, 2, 3, 4] and all(len(v) == 7 for v in tab.values())
    assert tab[3][3] == 6
    with pytest.raises(ValueError):
        beta(0, 2)


def test_en_counts_range():
    assert en_counts(3, 1, 2, 0) == (0, comb(2, 0) * comb(1, 1))
    assert en_counts(3, 1, 2, 2) == (0, comb(2, 2) * comb(3, 1))
    with pytest.raises(ValueError):
        en_counts(3, 2, 2, 0)
    with pytest.raises(ValueError):
        en_counts(3, 1, 0, 1)


def _sum_by_hand(s, k, u):
    return sum((-1) ** j * comb(s - k, j - k + 1) * comb(u + j - 1, u - 1) for j in range(max(k - 1, 0), s))


@pytest.mark.parametrize("s", range(2, 11))
def test_alternating_sum_sign_and_vanishing(s):
    for k in range(s + 1):
        for u in range(max(1, s - k), 13):
            v = alternating_sum(s, k, u)
            assert v == _sum_by_hand(s, k, u)
            assert alternating_sum_nonzero(s, k, u) == (s - k <= u - 1)
            if v:
                assert (v > 0) == (s % 2 == 1)


def test_alternating_sum_vanishes_on_the_boundary():
    for s in range(2, 8):
        for k in range(s):
            assert alternating_sum(s, k, s - k) == 0


# -- Hilbert–Burch and the mapping cone ---------------------------------------------

def test_hilbert_burch_of_link_ideal(link):
    R, I, a = link
    hb = hilbert_burch(I)
    assert hb.r == 3 and hb.b == (3, 3) and hb.i == (2, 2, 2) and hb.u == 3
    assert hb.sigma == 6 == sum(hb.i)
    assert all(b > hb.i[-1] for b in hb.b)


def test_hilbert_burch_of_complete_intersection():
    R = create_ring(Field(32003), ["x", "y", "z"])
    hb = hilbert_burch(GradedIdeal(R, ["x", "y^2"]))
    assert hb.r == 2 and hb.i == (2, 1) and hb.b == (3,) and hb.u == 1


def test_hilbert_burch_rejects_wrong_height():
    R = create_ring(Field(32003), ["x", "y", "z"])
    with pytest.raises(HypothesisError) as err:
        hilbert_burch(GradedIdeal(R, ["x", "y", "z"]))
    assert err.value.test == "height"


def test_hilbert_burch_rejects_non_perfect():
    R = create_ring(Field(32003), list("xyzw"))
    # two skew lines: height 2, not Cohen-Macaulay
    I = GradedIdeal(R, ["x*z", "x*w", "y*z", "y*w"])
    with pytest.raises(HypothesisError) as err:
        hilbert_burch(I)
    assert err.value.test == "perfect"


def test_mapping_cone_minors_give_residual(link):
    R, I, a = link
    psi = mapping_cone_presentation(I, a)
    assert (psi.nrows, psi.ncols) == (3, 4)
    J = ideal_quotient(a, I)
    minors = GradedIdeal(R, [x for x in max_minors(psi).values() if not x.is_zero()])
    assert minors.same_as(J)


def test_mapping_cone_without_a_is_hilbert_burch(link):
    R, I, _ = link
    psi = mapping_cone_presentation(I, GradedIdeal(R, []))
    assert psi == hilbert_burch(I).matrix


# -- Eagon–Northcott -------------------------------------------------------------

def test_en_ranks_and_exactness(link):
    R, I, a = link
    psi = mapping_cone_presentation(I, a)
    C = eagon_northcott(psi)
    r, s = 3, 2
    assert C.ranks() == [1] + [comb(r + j - 1, j) * comb(r + s - 1, r + j) for j in range(s)]
    assert en_exactness(C)
    assert len(en_basis(3, 4, 1)) == 3


def test_en_single_column_block():
    # square matrix: the complex is R <- R(-deg det)
    R = create_ring(Field(32003), ["x", "y"])
    from resint.maps import GradedMap

    psi = GradedMap(R, [0, 0], [1, 1], [[R.parse("x"), R.parse("y")], [R.parse("-y"), R.parse("x")]])
    C = eagon_northcott(psi)
    assert C.ranks() == [1, 1]
    assert C.d(1).entries[0][0] == R.parse("x^2 + y^2")


def test_en_grade_warning():
    R = create_ring(Field(32003), ["x", "y", "z"])
    from resint.maps import GradedMap

    x = R.parse("x")
    psi = GradedMap(R, [0], [1, 1, 1], [[x, x, x]])
    with pytest.warns(UserWarning, match="need not be a resolution"):
        C = eagon_northcott(psi)
    assert C.is_complex() and not en_exactness(C)


# -- shapes ---------------------------------------------------------------------

def test_en_shape_counts_for_link(link):
    sh = en_shape((2, 2, 2), (3, 3), (2, 2))
    assert (sh.k, sh.u, sh.s, sh.sigma) == (0, 3, 2, 6)
    for j in range(2):
        assert sh.n_closed(j) == sh.n_direct(j)
        assert sh.f(j) == max(sh.twists[j])
    assert f_profile_ok(sh)


def test_en_shape_tie_order_does_not_matter():
    a = en_shape((3, 3, 2), (4, 4), (4, 3))
    b = en_shape((2, 3, 3), [4, 4], [3, 4])
    assert a.twists == b.twists and a.c == b.c


@st.composite
def degree_data(draw):
    r = draw(st.integers(2, 4))
    e = draw(st.lists(st.integers(1, 2), min_size=r, max_size=r))
    E = sum(e)
    i_deg = sorted((E - x for x in e), reverse=True)
    b_deg = [E] * (r - 1)
    s = draw(st.integers(2, 3))
    a_deg = draw(st.lists(st.integers(i_deg[-1], i_deg[-1] + 3), min_size=s, max_size=s))
    return i_deg, b_deg, a_deg


@settings(max_examples=60, deadline=None)
@given(degree_data())
def test_shape_counts_and_profile(data):
    sh = en_shape(*data)
    if sh.s - sh.k > sh.u:
        return
    assert f_profile_ok(sh)
    for j in range(max(sh.k - 1, 0), sh.s):
        assert sh.n_closed(j) == sh.n_direct(j)
        assert sh.f(j) == max(sh.twists[j])


def test_refined_strict_prediction():
    ref = refined_strict_prediction((3, 3, 2), (3, 2))
    assert ref == {"applicable": True, "second_degree": 3, "w": 2, "t": 1, "t_le_w": True, "predicted": 0}
    assert refined_strict_prediction((2, 2, 2), (2, 2)) == {"applicable": False}


# -- the whole pipeline ---------------------------------------------------------------

def test_en_regularity_on_link(link):
    R, I, a = link
    rep = en_regularity(I, a)
    assert rep.case.startswith("equality regime")
    assert rep.actual_mfr == rep.actual_en == rep.predicted_general == rep.predicted_equality_regime == 0
    assert rep.consistent


def test_en_regularity_strict_entry():
    R, I, a = _entry_by_name("hb3_mixed_s2_strict").ideals()
    rep = en_regularity(I, a)
    assert rep.case.startswith("strict regime")
    assert rep.strict and rep.actual_mfr < rep.rhs_min_degree
    assert rep.refined["predicted"] == rep.actual_mfr
    assert rep.consistent


def test_en_regularity_rejects_trivial(link):
    R, I, _ = link
    with pytest.raises(HypothesisError):
        en_regularity(I, I)
