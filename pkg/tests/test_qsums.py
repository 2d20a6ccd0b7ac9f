from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import Q, from_sympy
from qcong.core_arith import QPoly, RatFun
from qcong.errors import InvalidParams, PoleAtOne, WrongFamily
from qcong.numthy import ModRing, central_binomial
from qcong.qsums import (SumCase, SumFamily, limit_at_one, numeric_sum, parametric_sum,
                         partial_sum, summand, term_limit_at_1)

Q_FAMILIES = [SumFamily.EQ15, SumFamily.EQ13_GG, SumFamily.EQ14_GL, SumFamily.EQ42]


def _sympy_poch(base_expr, step, k):
    return sympy.Mul(*[1 - base_expr * Q ** (step * i) for i in range(k)])


def _sympy_summand(fam, k, s=1):
    q = Q ** s
    qq = lambda b, st, sign=1: _sympy_poch(sign * q ** b, st * s, k)  # noqa: E731
    if fam == SumFamily.EQ15:
        return qq(1, 2) * _sympy_poch(-1, 4 * s, k) / (qq(1, 2, -1) * qq(4, 4)) * q ** (2 * k)
    if fam == SumFamily.EQ13_GG:
        return qq(1, 2) * q ** (2 * k) / (qq(2, 2) * qq(1, 2, -1))
    if fam == SumFamily.EQ14_GL:
        return q ** (k * k) * qq(1, 2) / qq(4, 4)
    return qq(1, 2) * q ** (2 * k) / (qq(4, 4) * qq(1, 2, -1))


def _as_ratfun(expr):
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    return RatFun(from_sympy(num), from_sympy(den))


def test_summand_examples():
    assert summand(SumCase(SumFamily.EQ15, 0), 0) == RatFun(1)
    one_minus = lambda e: QPoly({0: 1, e: -1})  # noqa: E731
    assert summand(SumCase(SumFamily.EQ15, 1), 1) == RatFun(QPoly({2: 2}) * one_minus(1),
                                                            QPoly([1, 1]) * one_minus(4))
    assert summand(SumCase(SumFamily.EQ14_GL, 1), 1) == RatFun(QPoly({1: 1}) * one_minus(1), one_minus(4))
    with pytest.raises(WrongFamily):
        summand(SumCase(SumFamily.NUM8, 1), 1)
    with pytest.raises(InvalidParams):
        summand(SumCase(SumFamily.EQ15, 1), 2)


def test_partial_sum_examples():
    assert partial_sum(SumCase(SumFamily.EQ15, 0)) == RatFun(1)
    assert partial_sum(SumCase(SumFamily.EQ15, 1)) == RatFun(1) + summand(SumCase(SumFamily.EQ15, 1), 1)
    assert partial_sum(SumCase(SumFamily.WHIPPLE_SPECIAL, 1, 1, 3)) == RatFun(-1)


@pytest.mark.parametrize("fam", Q_FAMILIES)
def test_partial_sums_against_sympy(fam):
    for upper in range(5):
        for s in (1, 3):
            expr = sum(_sympy_summand(fam, k, s) for k in range(upper + 1))
            assert partial_sum(SumCase(fam, upper, s)) == _as_ratfun(expr)


@pytest.mark.property
def test_step_is_substitution():
    for fam in Q_FAMILIES:
        for upper in range(6):
            base = partial_sum(SumCase(fam, upper))
            for s in (2, 3, 5):
                assert partial_sum(SumCase(fam, upper, s)) == base.substitute_power(s)


@pytest.mark.property
def test_parametric_sum():
    assert parametric_sum(0).evaluate(5) == RatFun(1)
    for upper in range(4):
        for s in (1, 3):
            assert parametric_sum(upper, s).evaluate(0) == partial_sum(SumCase(SumFamily.EQ15, upper, s))
    assert parametric_sum(4, 1).evaluate(3) == RatFun(-1)
    for e in (-5, -3, 0, 2, 7):
        ps = parametric_sum(3, 1)
        assert ps.evaluate(e) == ps.evaluate_expanded(e)


@pytest.mark.property
def test_whipple_terms_vanish_beyond_cutoff():
    for n in (3, 5):
        for j in range(3):
            c = (2 * j + 1) * n
            case = SumCase(SumFamily.WHIPPLE_SPECIAL, c + 2, 1, c)
            for k in range((c - 1) // 2 + 1, c + 3):
                assert summand(case, k) == RatFun(0)
            assert summand(case, (c - 1) // 2) != RatFun(0)


def test_numeric_sum_examples():
    assert numeric_sum(SumFamily.NUM8, 1, ModRing(3, 2)).value == 8
    assert numeric_sum(SumFamily.NUM8, 2, ModRing(5, 2)).value == 24
    assert numeric_sum(SumFamily.NUM8, 0, ModRing(7, 3)).value == 1
    with pytest.raises(WrongFamily):
        numeric_sum(SumFamily.EQ15, 1, ModRing(3, 1))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([SumFamily.NUM8, SumFamily.NUM16]), st.integers(0, 30),
       st.sampled_from([3, 5, 7, 11]), st.integers(1, 4))
@pytest.mark.property
def test_numeric_sum_matches_fractions(fam, upper, p, r):
    b = 8 if fam == SumFamily.NUM8 else 16
    exact = sum(Fraction(central_binomial(k), b ** k) for k in range(upper + 1))
    ring = ModRing(p, r)
    assert numeric_sum(fam, upper, ring) == ring(exact)


@pytest.mark.property
def test_term_limits():
    assert term_limit_at_1(SumFamily.EQ15, 0) == 1
    assert term_limit_at_1(SumFamily.EQ15, 1) == Fraction(1, 4)
    assert term_limit_at_1(SumFamily.EQ15, 3) == Fraction(5, 128)
    for k in range(21):
        assert term_limit_at_1(SumFamily.EQ15, k) == Fraction(central_binomial(k), 8 ** k)
        assert term_limit_at_1(SumFamily.EQ42, k) == Fraction(central_binomial(k), 16 ** k)
    with pytest.raises(PoleAtOne):
        limit_at_one(RatFun(1, QPoly([-1, 1])))
