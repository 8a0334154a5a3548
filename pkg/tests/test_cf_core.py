from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import reference_enclosure

from cfcert import (
    BudgetExceededError,
    CFPoint,
    ConvergentPair,
    DepthTooSmallError,
    DomainError,
    EvalMode,
    NotConvergedError,
    advance,
    convergents,
    eval_directed,
    eval_enclosure,
    evaluate,
    tail_enclosure,
    term,
)

# reference midpoints frozen from exact convergent runs at width < 1e-45
G_1_1 = Fraction("1.433127426722311758317183455775992")
G_0_1 = Fraction("0.6977746579640079820067905925517526")

points = st.builds(
    CFPoint,
    st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=20),
    st.fractions(min_value=Fraction(1, 8), max_value=6, max_denominator=20),
)
nonneg_points = st.builds(
    CFPoint,
    st.fractions(min_value=0, max_value=4, max_denominator=20),
    st.fractions(min_value=Fraction(1, 8), max_value=6, max_denominator=20),
)


class TestCFPoint:
    def test_rejects_m_at_or_below_minus_one(self):
        with pytest.raises(DomainError):
            CFPoint(-1, 1)
        with pytest.raises(DomainError):
            CFPoint(-2, 1)

    def test_rejects_nonpositive_lambda(self):
        with pytest.raises(DomainError):
            CFPoint(1, 0)
        with pytest.raises(DomainError):
            CFPoint(1, -3)

    def test_exact_coercion(self):
        p = CFPoint("0.1", "1/3")
        assert p.m == Fraction(1, 10)
        assert p.lam == Fraction(1, 3)


class TestTerm:
    @pytest.mark.parametrize(
        "m, lam, j, expected",
        [
            (0, 1, 0, Fraction(0)),
            (1, 1, 3, Fraction(4)),
            (Fraction(1, 10), 2, 1, Fraction(11, 5)),
        ],
    )
    def test_values(self, m, lam, j, expected):
        assert term(CFPoint(m, lam), j) == expected

    def test_negative_index_rejected(self):
        with pytest.raises(DomainError):
            term(CFPoint(1, 1), -1)


class TestAdvance:
    def test_depth_one_fraction(self):
        state = ConvergentPair.seed()
        state = advance(state, 1)
        state = advance(state, 2)
        assert state.value() == Fraction(3, 2)

    def test_depth_two_fraction(self):
        state = ConvergentPair.seed()
        for x in (1, 2, 3):
            state = advance(state, x)
        assert state.value() == Fraction(10, 7)

    def test_seed_has_no_value(self):
        with pytest.raises(DomainError):
            ConvergentPair.seed().value()

    @given(
        xs=st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=20),
            min_size=1,
            max_size=25,
        )
    )
    def test_determinant_identity(self, xs):
        state = ConvergentPair.seed()
        for x in xs:
            state = advance(state, x)
            assert state.determinant() == (-1) ** (state.n + 1)


class TestTailEnclosure:
    def test_hand_computed_convergents(self):
        enc = tail_enclosure(CFPoint(1, 1), 4)
        assert enc.lo == Fraction(225, 157)
        assert enc.hi == Fraction(43, 30)

    def test_width_small_by_depth_20(self):
        enc = tail_enclosure(CFPoint(1, 1), 20)
        assert enc.width < Fraction(1, 10**12)

    def test_nesting_two_steps(self):
        outer = tail_enclosure(CFPoint(1, 1), 6)
        inner = tail_enclosure(CFPoint(1, 1), 8)
        assert outer.encloses(inner)
        assert inner.width < outer.width

    def test_depth_too_small(self):
        with pytest.raises(DepthTooSmallError):
            tail_enclosure(CFPoint(1, 1), 0)

    def test_negative_m_rejected(self):
        with pytest.raises(DomainError):
            tail_enclosure(CFPoint(Fraction(-1, 2), 1), 4)

    @given(point=nonneg_points, depth=st.integers(min_value=1, max_value=15))
    @settings(max_examples=40, deadline=None)
    def test_matches_reference_chain(self, point, depth):
        vals = []
        state = ConvergentPair.seed()
        for j in range(depth + 1):
            state = advance(state, term(point, j))
            vals.append(state.value())
        enc = tail_enclosure(point, depth)
        assert {enc.lo, enc.hi} == {vals[-1], vals[-2]}
        assert enc.lo <= enc.hi


class TestBracketing:
    @given(point=nonneg_points)
    @settings(max_examples=40, deadline=None)
    def test_even_increase_odd_decrease_even_below_odd(self, point):
        vals = convergents(point, 13)
        evens = vals[0::2]
        odds = vals[1::2]
        assert all(a < b for a, b in zip(evens, evens[1:]))
        assert all(a > b for a, b in zip(odds, odds[1:]))
        assert max(evens) < min(odds)


class TestEvalEnclosure:
    def test_g_1_1(self, oracle):
        enc = eval_enclosure(CFPoint(1, 1), Fraction(1, 10**6))
        lo, hi = oracle(CFPoint(1, 1), 40)
        assert enc.width <= Fraction(1, 10**6)
        assert enc.lo <= G_1_1 <= enc.hi
        assert max(enc.lo, lo) <= min(enc.hi, hi)

    def test_g_0_1(self, oracle):
        enc = eval_enclosure(CFPoint(0, 1), Fraction(1, 10**6))
        assert enc.width <= Fraction(1, 10**6)
        assert enc.lo <= G_0_1 <= enc.hi
        assert enc.hi < 1

    def test_m_zero_is_pure_reciprocal_of_tail(self):
        enc = eval_enclosure(CFPoint(0, 1), Fraction(1, 10**9))
        tail = tail_enclosure(CFPoint(1, 1), enc.depth)
        assert enc.lo == 1 / tail.hi
        assert enc.hi == 1 / tail.lo

    def test_budget_exceeded_carries_best(self):
        with pytest.raises(BudgetExceededError) as exc:
            eval_enclosure(CFPoint(1, Fraction(1, 1000)), Fraction(1, 10**12), max_depth=80)
        best = exc.value.best
        assert best is not None
        assert best.lo < best.hi

    def test_rejects_bad_tol(self):
        with pytest.raises(DomainError):
            eval_enclosure(CFPoint(1, 1), 0)

    @given(point=points)
    @settings(max_examples=30, deadline=None)
    def test_contains_reference_interval(self, point):
        enc = eval_enclosure(point, Fraction(1, 10**8))
        lo, hi = reference_enclosure(point, 60)
        assert max(enc.lo, lo) <= min(enc.hi, hi)

    @given(point=points)
    @settings(max_examples=25, deadline=None)
    def test_nesting_in_tolerance(self, point):
        wide = eval_enclosure(point, Fraction(1, 10**4))
        narrow = eval_enclosure(point, Fraction(1, 10**9))
        assert wide.encloses(narrow)

    @given(point=points)
    @settings(max_examples=25, deadline=None)
    def test_shift_identity_intersection(self, point):
        tol = Fraction(1, 10**8)
        direct = eval_enclosure(point, tol)
        tail = eval_enclosure(point.shifted(), tol)
        x0 = point.m * point.lam
        lo, hi = x0 + 1 / tail.hi, x0 + 1 / tail.lo
        assert max(direct.lo, lo) <= min(direct.hi, hi)


class TestEvalDirected:
    def test_agrees_with_exact_on_1_1(self):
        exact = eval_enclosure(CFPoint(1, 1), Fraction(1, 10**9))
        directed = eval_directed(CFPoint(1, 1), Fraction(1, 10**9))
        assert directed.mode is EvalMode.DIRECTED
        assert max(exact.lo, directed.lo) <= min(exact.hi, directed.hi)

    def test_deep_small_lambda_near_one(self):
        enc = eval_directed(CFPoint(1, Fraction(1, 1000)), Fraction(1, 10**4))
        assert enc.width <= Fraction(1, 10**4)
        assert abs(enc.midpoint - 1) < Fraction(1, 100)

    def test_m_zero_small_lambda_below_one(self):
        enc = eval_directed(CFPoint(0, Fraction(1, 100)), Fraction(1, 10**4))
        assert enc.hi < 1

    def test_not_converged_carries_best(self):
        with pytest.raises(NotConvergedError) as exc:
            eval_directed(CFPoint(1, Fraction(1, 1000)), Fraction(1, 10**9), max_depth=50)
        best = exc.value.best
        assert best is not None
        assert best.lo < best.hi

    def test_rejects_low_precision(self):
        with pytest.raises(DomainError):
            eval_directed(CFPoint(1, 1), Fraction(1, 10), precision_bits=32)

    @given(point=points)
    @settings(max_examples=20, deadline=None)
    def test_mode_consistency(self, point):
        tol = Fraction(1, 10**8)
        exact = eval_enclosure(point, tol)
        directed = eval_directed(point, tol)
        assert max(exact.lo, directed.lo) <= min(exact.hi, directed.hi)


class TestClosedForms:
    """Half-integer m admits elementary closed forms via the shift identity."""

    @pytest.mark.parametrize("lam", [Fraction(1, 2), Fraction(2, 3), 1, 2])
    def test_m_half_is_coth(self, lam):
        import math

        enc = eval_enclosure(CFPoint(Fraction(1, 2), lam), Fraction(1, 10**13))
        assert abs(float(enc.midpoint) - 1 / math.tanh(2 / lam)) < 1e-12

    @pytest.mark.parametrize("lam", [Fraction(1, 2), 1, 2])
    def test_m_minus_half_is_tanh_shifted(self, lam):
        import math

        enc = eval_enclosure(CFPoint(Fraction(-1, 2), lam), Fraction(1, 10**13))
        assert abs(float(enc.midpoint) - (math.tanh(2 / lam) - lam / 2)) < 1e-12


class TestEvaluateRouting:
    def test_auto_exact_above_cutoff(self):
        assert evaluate(CFPoint(1, 1), Fraction(1, 10**6)).mode is EvalMode.EXACT

    def test_auto_directed_below_cutoff(self):
        enc = evaluate(CFPoint(1, Fraction(1, 128)), Fraction(1, 10**6))
        assert enc.mode is EvalMode.DIRECTED

    def test_explicit_modes(self):
        assert evaluate(CFPoint(1, 1), mode="directed").mode is EvalMode.DIRECTED
        assert evaluate(CFPoint(1, 1), mode="exact").mode is EvalMode.EXACT

    def test_unknown_mode_rejected(self):
        with pytest.raises(DomainError):
            evaluate(CFPoint(1, 1), mode="fast")
