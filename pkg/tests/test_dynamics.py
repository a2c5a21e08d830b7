from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rde import X, Y, InitialData, InsufficientData, SystemParams, TheoremInapplicable, simulate
from rde.dynamics import (
    BoundaryCase,
    Hypothesis,
    Verdict,
    boundary_analysis,
    boundedness_certificate,
    cauchy_tail,
    classify_asymptotics,
    detect_period,
    observed_limits,
    periodicity_condition,
    subsequence_nonincreasing,
)
from rde.simulator import SimMode

from conftest import unit_rationals

F = Fraction
HALF = F(1, 2)


def test_certificate_h1():
    params = SystemParams(HALF, 1, HALF, 1, p=1, k=2)
    cert = boundedness_certificate(params, InitialData((2, 5, 2), (3, 7, 3)))
    assert cert.hypothesis is Hypothesis.H1
    assert (cert.bound_x, cert.bound_y) == (5, 7)


def test_certificate_h2():
    params = SystemParams(2, F(1, 4), 2, F(1, 4), p=1, k=2)
    cert = boundedness_certificate(params, InitialData((4, 3, 1), (4, 2, 1)))
    assert cert.hypothesis is Hypothesis.H2
    assert (cert.bound_x, cert.bound_y) == (3, 2)


def test_certificate_none():
    params = SystemParams(HALF, HALF, HALF, HALF, p=1, k=2)
    assert boundedness_certificate(params, InitialData((1, 2, 3), (3, 2, 1))).hypothesis is Hypothesis.NONE


def test_certificate_inapplicable():
    with pytest.raises(TheoremInapplicable):
        boundedness_certificate(SystemParams(1, 1, 1, 1, p=2, k=1), InitialData.constant(1))
    with pytest.raises(TheoremInapplicable):
        boundedness_certificate(SystemParams(1, 1, 1, 1, p=1, k=1), InitialData((-1, 1), (1, 1)))


def test_h1_bound_can_fail_at_index_zero_only():
    # b = 2 halves the bound below x_0 itself; iterates still respect it
    params = SystemParams(1, 2, 1, 2, p=1, k=1)
    init = InitialData((F(1, 4), F(3, 4)), (F(1, 5), F(4, 5)))
    cert = boundedness_certificate(params, init)
    assert cert.bound_x == F(3, 8) < init.x_at(0)
    traj = simulate(params, init, 100)
    assert all(traj.x(n) <= cert.bound_x and traj.y(n) <= cert.bound_y for n in range(1, 101))


@st.composite
def h1_instances(draw):
    k = draw(st.integers(1, 4))
    a, alpha = (draw(st.fractions(0, 3, max_denominator=4)) for _ in range(2))
    b, beta = (draw(st.fractions(1, 3, max_denominator=4)) for _ in range(2))
    xs = tuple(draw(unit_rationals()) for _ in range(k + 1))
    ys = tuple(draw(unit_rationals()) for _ in range(k + 1))
    return SystemParams(a, b, alpha, beta, 1, k), InitialData(xs, ys)


@settings(max_examples=30, deadline=None)
@given(h1_instances())
def test_certificate_soundness_h1(inst):
    params, init = inst
    cert = boundedness_certificate(params, init)
    assert cert.hypothesis is Hypothesis.H1
    traj = simulate(params, init, 60)
    assert subsequence_nonincreasing(traj, X, params.k)
    assert subsequence_nonincreasing(traj, Y, params.k)
    assert all(traj.x(n) <= cert.bound_x and traj.y(n) <= cert.bound_y for n in range(1, 61))


def test_periodicity_condition_examples(period2):
    params, init = period2
    assert periodicity_condition(params, init).holds
    v = periodicity_condition(SystemParams(HALF, F(1, 3), F(1, 3), F(2, 3), 1, 2), init)
    assert not v.holds and v.failed == ("a+b != 1",)
    v = periodicity_condition(params, InitialData((2, 5, 3), (3, 7, 3)))
    assert not v.holds and v.failed == ("x_0 != x_{-k}",)
    with pytest.raises(TheoremInapplicable):
        periodicity_condition(SystemParams(HALF, HALF, HALF, HALF, 2, 2), init)
    with pytest.raises(TheoremInapplicable):
        periodicity_condition(params, InitialData((2, 0, 2), (3, 7, 3)))


def test_detect_period_examples(period2, flagship):
    params, init = period2
    assert detect_period(simulate(params, init, 100), 2, 100)
    params, init = flagship
    assert not detect_period(simulate(params, init, 10), 1, 10)
    assert detect_period(simulate(params, init, 0), 1, 0)
    params = SystemParams(HALF, HALF, HALF, HALF, 1, 1)
    assert not detect_period(simulate(params, InitialData((1, 2), (1, 1)), 0), 1, 0)
    with pytest.raises(InsufficientData):
        detect_period(simulate(params, init, 5), 1, 10)


def test_classify_examples():
    c = classify_asymptotics(SystemParams(2, 1, 2, 1))
    assert c.discriminant == 4 and (c.verdict_x, c.verdict_y) == (Verdict.ZERO, Verdict.ZERO)
    c = classify_asymptotics(SystemParams(HALF, 1, HALF, 1))
    assert c.A == c.B == 2 and (c.verdict_x, c.verdict_y) == (Verdict.ZERO, Verdict.ZERO)
    c = classify_asymptotics(SystemParams(HALF, F(1, 4), HALF, F(1, 4)))
    assert c.A == c.B == HALF and (c.verdict_x, c.verdict_y) == (Verdict.INFINITY, Verdict.INFINITY)
    c = classify_asymptotics(SystemParams(HALF, HALF, HALF, HALF))
    assert c.A == c.B == 1 and c.verdict_x is Verdict.BOUNDARY
    c = classify_asymptotics(SystemParams(2, 1, HALF, 1))
    assert c.A is None and c.B is None and c.verdict_x is Verdict.ZERO
    # with a*alpha = 1, alpha*b+beta = (a*beta+b)/a, so mixed signs need a < 0
    c = classify_asymptotics(SystemParams(-2, 1, -HALF, 1))
    assert c.verdict_x is Verdict.UNSUPPORTED and c.verdict_y is Verdict.ZERO
    c = classify_asymptotics(SystemParams(-2, 1, 1, 1))
    assert c.verdict_x is Verdict.UNSUPPORTED
    with pytest.raises(TheoremInapplicable):
        classify_asymptotics(SystemParams(1, 1, 1, 1, p=0))


def test_classify_mixed_sides():
    c = classify_asymptotics(SystemParams(HALF, 1, HALF, F(1, 10)))
    assert c.A == F(7, 5) and c.B == F(4, 5)
    assert (c.verdict_x, c.verdict_y) == (Verdict.ZERO, Verdict.INFINITY)
    init = InitialData((F(1, 3), F(1, 2)), (F(2, 3), F(1, 4)))
    assert observed_limits(SystemParams(HALF, 1, HALF, F(1, 10)), init) == (Verdict.ZERO, Verdict.INFINITY)


BOUNDARY = SystemParams(HALF, HALF, HALF, HALF, 1, 2)


def test_boundary_frozen_even():
    init = InitialData((F(1, 3), F(1, 5), F(1, 3)), (F(2, 7), F(3, 8), F(5, 9)))
    reports = {(r.side, r.case.parity): r for r in boundary_analysis(BOUNDARY, init)}
    rep = reports[(X, 0)]
    assert rep.case is BoundaryCase.FROZEN_EVEN_SUBSEQ and rep.values == (F(1, 3),)
    # alpha x_{-k} = (1 - beta) x_0 reduces to x_{-k} = x_0 here
    assert reports[(Y, 1)].case is BoundaryCase.FROZEN_ODD_SUBSEQ
    assert reports[(Y, 1)].values == (F(3, 8),)
    assert reports[(X, 1)].case is BoundaryCase.CONVERGENT_ODD_SUBSEQ
    assert reports[(X, 1)].values is None
    traj = simulate(BOUNDARY, init, 100)
    assert all(traj.x(2 * n) == F(1, 3) for n in range(51))
    assert all(traj.y(2 * n + 1) == F(3, 8) for n in range(50))


def test_boundary_convergent():
    init = InitialData((F(1, 3), F(1, 5), F(1, 4)), (F(2, 7), F(3, 8), F(5, 9)))
    cases = {(r.side, r.case) for r in boundary_analysis(BOUNDARY, init)}
    assert (X, BoundaryCase.CONVERGENT_EVEN_SUBSEQ) in cases
    traj = simulate(BOUNDARY, init, 400, SimMode.FLOAT64)
    assert cauchy_tail(traj.subsequence(X, 0, 2))


def test_boundary_frozen_odd_for_y():
    # alpha x_{-2} = (1 - beta) x_0  <=>  x_{-2} = x_0 here
    init = InitialData((F(1, 3), F(1, 5), F(1, 3)), (F(2, 7), F(3, 8), F(5, 9)))
    reports = [r for r in boundary_analysis(BOUNDARY, init) if r.side == Y]
    assert BoundaryCase.FROZEN_ODD_SUBSEQ in {r.case for r in reports}


def test_boundary_single_side():
    # a*beta + b = 3/4 = 1 - a*alpha gives A = 1; B = 3/2
    params = SystemParams(HALF, F(1, 4), HALF, 1, 1, 4)
    init = InitialData.constant(4, F(1, 2))
    reports = boundary_analysis(params, init)
    assert {r.side for r in reports} == {X}
    assert all(len(r.values) == 2 for r in reports if r.case.frozen)
    assert any(r.case.frozen for r in reports)


def test_boundary_inapplicable():
    init = InitialData.constant(1, 1)
    with pytest.raises(TheoremInapplicable):
        boundary_analysis(SystemParams(HALF, HALF, HALF, HALF, 1, 1), init)
    init = InitialData.constant(2, 1)
    with pytest.raises(TheoremInapplicable):
        boundary_analysis(SystemParams(2, 1, 1, 1, 1, 2), init)
    with pytest.raises(TheoremInapplicable):
        boundary_analysis(SystemParams(HALF, 1, HALF, 1, 1, 2), init)


def test_cauchy_tail():
    assert cauchy_tail([1 / 2**n for n in range(60)])
    assert not cauchy_tail([float(n) for n in range(20)])
    with pytest.raises(InsufficientData):
        cauchy_tail([1.0, 1.0])
