from fractions import Fraction

import pytest
from hypothesis import strategies as st

from rde import InitialData, SystemParams

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")


def unit_rationals(max_den=64):
    """Rationals strictly inside (0, 1)."""
    return st.integers(2, max_den).flatmap(
        lambda d: st.integers(1, d - 1).map(lambda n: Fraction(n, d))
    )


def small_rationals(lo=-3, hi=3, max_den=8):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


@st.composite
def instances(draw, ks=(1, 2, 3, 4), ps=(1,)):
    k = draw(st.sampled_from(ks))
    p = draw(st.sampled_from(ps))
    coeffs = [draw(small_rationals()) for _ in range(4)]
    xs = tuple(draw(unit_rationals()) for _ in range(k + 1))
    ys = tuple(draw(unit_rationals()) for _ in range(k + 1))
    return SystemParams(*coeffs, p=p, k=k), InitialData(xs, ys)


@pytest.fixture
def flagship():
    return SystemParams(1, 1, 1, 1, p=1, k=1), InitialData.constant(1, 1)


@pytest.fixture
def period2():
    params = SystemParams(Fraction(1, 2), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), p=1, k=2)
    return params, InitialData((2, 5, 2), (3, 7, 3))
