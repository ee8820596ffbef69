import warnings

import pytest
from hypothesis import strategies as st

from resint import GradedIdeal, create_ring
from resint.ring import Field

P = 32003


@pytest.fixture
def R3q():
    return create_ring(Field(0), ["x", "y", "z"])


@pytest.fixture
def R3p():
    return create_ring(Field(P), ["x", "y", "z"])


@pytest.fixture
def link(R3q):
    I = GradedIdeal(R3q, ["x*z - y^2", "x^2 - y*z", "x*y - z^2"])
    a = GradedIdeal(R3q, ["x*z - y^2", "x^2 - y*z"])
    return R3q, I, a


@pytest.fixture
def twisted_cubic():
    R = create_ring(Field(P), list("xyzw"))
    return R, GradedIdeal(R, ["x*z - y^2", "x*w - y*z", "y*w - z^2"])


@pytest.fixture
def generic_2x3():
    R = create_ring(Field(P), list("abcdef"))
    return R, GradedIdeal(R, ["a*e - b*d", "a*f - c*d", "b*f - c*e"])


def homogeneous(ring, degree, coeffs=st.integers(-4, 4), max_terms=4):
    """Strategy for homogeneous polynomials of a fixed degree."""
    monos = ring.monomials_of_degree(degree)

    @st.composite
    def build(draw):
        picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
        acc = ring.zero()
        for m in picks:
            acc = acc + ring.monomial(m, draw(coeffs))
        return acc

    return build()


@pytest.fixture(autouse=True)
def _quiet_minimality_warnings():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="generators of a were not minimal")
        yield


ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, passed: bool, detail: str = "") -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
