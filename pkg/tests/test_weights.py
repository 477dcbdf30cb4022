import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a1tk.errors import DomainError, InvalidWeightError, UnsupportedOperationError
from a1tk.weights import (
    DIVERGES,
    UNIT,
    Interval,
    PowerWeight,
    StepWeight,
    average,
    ess_inf,
    integral,
    lp_integral,
    renormalize,
)

from conftest import step_weights

HALVES = StepWeight([0, 0.5, 1], [2, 1])
C2 = PowerWeight(0.5, -0.5)


def close(a, b, rtol=1e-12):
    return math.isclose(a, b, rel_tol=rtol, abs_tol=0.0)


def test_interval_validation():
    with pytest.raises(DomainError):
        Interval(0.5, 0.5)
    with pytest.raises(DomainError):
        Interval(-0.1, 0.5)
    with pytest.raises(DomainError):
        Interval(0.2, 1.5)
    assert Interval(0.2, 0.7).length == pytest.approx(0.5)


@pytest.mark.parametrize(
    "bp, vals, msg",
    [
        ([0, 1], [0.0], "cell 0"),
        ([0, 0.5, 1], [1, -2], "cell 1"),
        ([0, 0.5, 0.5, 1], [1, 1, 1], "increase strictly"),
        ([0.1, 1], [1], "start at 0"),
        ([0, 1], [1, 2], "expected 1 values"),
        ([0, 1], [math.inf], "cell 0"),
    ],
)
def test_step_weight_validation(bp, vals, msg):
    with pytest.raises(InvalidWeightError, match=msg):
        StepWeight(bp, vals)


def test_power_weight_validation():
    with pytest.raises(InvalidWeightError):
        PowerWeight(1.0, -1.0)
    with pytest.raises(InvalidWeightError):
        PowerWeight(1.0, 0.1)
    with pytest.raises(InvalidWeightError):
        PowerWeight(0.0, -0.5)


def test_left_continuity():
    assert HALVES(0.5) == 2.0
    assert HALVES(0.5 + 1e-12) == 1.0
    assert HALVES(1.0) == 1.0


# -- integral / average / ess_inf / lp_integral examples ----------------------


def test_integral_examples():
    assert integral(StepWeight.constant(5), (0.2, 0.7)) == pytest.approx(2.5, rel=1e-12)
    assert integral(C2, UNIT) == pytest.approx(1.0, rel=1e-12)
    assert integral(HALVES, (0.25, 0.75)) == pytest.approx(0.75, rel=1e-12)


def test_average_examples():
    for i in [(0.0, 1.0), (0.1, 0.2), (0.7, 0.99)]:
        assert average(StepWeight.constant(5), i) == pytest.approx(5, rel=1e-12)
    assert average(HALVES, UNIT) == pytest.approx(1.5, rel=1e-12)
    assert average(C2, (0, 0.25)) == pytest.approx(2.0, rel=1e-12)


def test_ess_inf_examples():
    assert ess_inf(HALVES, (0, 0.5)) == 2
    assert ess_inf(HALVES, (0, 0.5 + 1e-9)) == 1
    assert ess_inf(C2, (0, 0.25)) == pytest.approx(1.0, rel=1e-12)


def test_lp_integral_examples():
    assert lp_integral(StepWeight.constant(1), UNIT, 7) == 1
    assert lp_integral(C2, UNIT, 1.5) == pytest.approx(math.sqrt(2), rel=1e-12)
    # direct antiderivative: a^p t^(p alpha + 1)/(p alpha + 1) at t = 1
    assert lp_integral(C2, UNIT, 1.5) == pytest.approx(0.5**1.5 / 0.25, rel=1e-12)
    assert lp_integral(C2, UNIT, 2) == DIVERGES
    assert lp_integral(C2, (0.25, 1), 2) == pytest.approx(0.25 * math.log(4), rel=1e-12)


def test_lp_integral_rejects_small_p():
    with pytest.raises(DomainError):
        lp_integral(HALVES, UNIT, 0.5)


def test_renormalize_examples():
    assert renormalize(StepWeight.constant(3), (0.2, 0.4)).equals(StepWeight.constant(3))
    assert renormalize(HALVES, (0.5, 1)).equals(StepWeight([0, 1], [1]))
    got = renormalize(StepWeight([0, 0.25, 1], [4, 1]), (0, 0.5))
    assert got.equals(StepWeight([0, 0.5, 1], [4, 1]))


def test_renormalize_power():
    r = renormalize(C2, (0, 0.25))
    assert isinstance(r, PowerWeight)
    assert average(r, UNIT) == pytest.approx(average(C2, (0, 0.25)), rel=1e-12)
    with pytest.raises(UnsupportedOperationError):
        renormalize(C2, (0.1, 0.5))


# -- properties -----------------------------------------------------------------

endpoints = st.lists(st.floats(0.0, 1.0), min_size=3, max_size=3, unique=True).map(sorted)


@settings(max_examples=200, deadline=None)
@given(step_weights(), endpoints)
def test_additivity(w, pts):
    a, b, c = pts
    whole = integral(w, (a, c))
    assert close(whole, integral(w, (a, b)) + integral(w, (b, c)))


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(-0.95, 0.0), endpoints)
def test_power_additivity(a, alpha, pts):
    w = PowerWeight(a, alpha)
    lo, mid, hi = pts
    assert close(integral(w, (lo, hi)), integral(w, (lo, mid)) + integral(w, (mid, hi)), 1e-11)


@settings(max_examples=200, deadline=None)
@given(step_weights(), endpoints)
def test_ess_inf_below_average_and_power_sanity(w, pts):
    i = Interval(pts[0], pts[2])
    assert ess_inf(w, i) <= average(w, i) * (1 + 1e-12)
    assert close(lp_integral(w, i, 1), integral(w, i))


@settings(max_examples=200, deadline=None)
@given(step_weights(), endpoints, st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_renormalization_invariance(w, pts, p):
    i = Interval(pts[0], pts[2])
    r = renormalize(w, i)
    assert close(average(r, UNIT), average(w, i))
    assert ess_inf(r, UNIT) == ess_inf(w, i)
    assert close(lp_integral(r, UNIT, p), lp_integral(w, i, p) / i.length)


@settings(max_examples=200, deadline=None)
@given(step_weights(), endpoints, st.floats(1.0, 5.0))
def test_holder_consistency(w, pts, p):
    i = Interval(pts[0], pts[2])
    assert average(w, i) ** p <= lp_integral(w, i, p) / i.length * (1 + 1e-12)


def test_canonical_merges_equal_neighbours():
    w = StepWeight([0, 0.2, 0.6, 1], [3, 3, 1])
    assert w.canonical().breakpoints == (0.0, 0.6, 1.0)
    assert w.canonical_indices() == (0, 2, 3)
    assert w.equals(StepWeight([0, 0.6, 1], [3, 1]))
