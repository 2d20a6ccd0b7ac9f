from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcong.core_arith import QPoly, RatFun
from qcong.errors import NonInvertibleInQuotient, PrecisionLoss
from qcong.factored import (HyperSeries, Poch, QProduct, binomial_cyclotomic_indices,
                            factor_valuation, sum_products)
from qcong.qalg import cyclotomic, cyclotomic_multiplicity
from qcong.quotient import local_ring


def _binomial(sign, e):
    return QPoly({0: 1, e: -sign}) if e >= 0 else None


def _direct(prod: QProduct) -> RatFun:
    """Multiply the factors out one by one as rational functions."""
    x = RatFun(Fraction(prod.coef))
    x = x * (RatFun(QPoly({prod.q_power: 1})) if prod.q_power >= 0
             else RatFun(1, QPoly({-prod.q_power: 1})))
    for sign, e, mult in prod.factors:
        f = (RatFun(QPoly({0: 1, e: -sign})) if e >= 0
             else RatFun(QPoly({-e: 1, 0: -sign}), QPoly({-e: 1})))
        x = x * f ** mult
    return x


factors = st.lists(st.tuples(st.sampled_from([1, -1]), st.integers(-6, 9).filter(bool),
                             st.integers(-2, 2)), max_size=5)
products = st.builds(QProduct, st.integers(-4, 4), st.integers(-4, 4), factors.map(tuple))


def test_binomial_indices():
    for e in range(1, 40):
        for sign in (1, -1):
            prod = QPoly(1)
            for d in binomial_cyclotomic_indices(sign, e):
                prod = prod * cyclotomic(d)
            target = QPoly({0: 1, e: -sign})
            assert prod == (-target if sign == 1 else target)
            for n in range(1, 30):
                assert factor_valuation(sign, e, n) == cyclotomic_multiplicity(target, n)


@pytest.mark.property
@settings(max_examples=400, deadline=None)
@given(st.lists(products, max_size=4))
def test_sum_products_matches_direct_sum(terms):
    expected = RatFun(0)
    for t in terms:
        expected = expected + _direct(t)
    got = sum_products(terms)
    assert got.ratfun == expected
    assert (got.ratfun.num, got.ratfun.den) == (expected.num, expected.den)


def test_zero_factor_and_pole():
    assert QProduct(3, 0, ((1, 0, 1),)).is_zero()
    with pytest.raises(ZeroDivisionError):
        QProduct(1, 0, ((1, 0, -1),)).cyclotomic_form()
    assert QProduct(1, 0, ((-1, 0, 3),)).to_ratfun() == RatFun(8)


def test_hyperseries_terms():
    s = HyperSeries((Poch(1, 1, 2),), (Poch(1, 4, 4),), 3, quad=1)
    assert s.term(0) == QProduct(1, 0, ())
    assert s.term(2).factors == ((1, 1, 1), (1, 3, 1), (1, 4, -1), (1, 8, -1))
    assert s.term(2).q_power == 4
    assert s.shifted(5).term(1).q_power == 6
    assert s.scaled(3).term(1).coef == 3


@pytest.mark.property
@settings(max_examples=300, deadline=None)
@given(products, st.sampled_from([2, 3, 4, 5, 6, 9]), st.integers(1, 3))
def test_local_ring_agrees_with_exact(prod, n, rel):
    exact = _direct(prod) if not prod.is_zero() else RatFun(0)
    ring = local_ring(n)
    lv = ring.from_product(prod, rel)
    if exact.is_zero():
        assert lv.is_exact_zero
        return
    v_num = cyclotomic_multiplicity(exact.num, n)
    v_den = cyclotomic_multiplicity(exact.den, n)
    assert lv.val == v_num - v_den
    via_ratfun = ring.from_ratfun(exact, rel)
    assert via_ratfun.val == lv.val
    assert via_ratfun.unit == lv.unit


@pytest.mark.property
@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8), st.sampled_from([3, 5, 7]), st.integers(1, 4))
def test_inverse_in_quotient(coeffs, n, j):
    ring = local_ring(n)
    a = QPoly(coeffs)
    if not a or not (a % cyclotomic(n)):
        if a:
            with pytest.raises(NonInvertibleInQuotient):
                ring.inverse(a.dense(), j)
        return
    inv = ring.inverse(a.dense(), j)
    assert ring.mul(a.dense(), inv, j) == [1]


def test_precision_tracking():
    ring = local_ring(3)
    phi = cyclotomic(3)
    x = ring.from_poly(phi ** 2 * QPoly([1, 1]), 2)
    assert (x.val, x.rel, x.abs_prec) == (2, 2, 4)
    diff = x - x
    assert diff.val is not None and diff.rel == 0 and diff.abs_prec == 4
    with pytest.raises(PrecisionLoss):
        diff.multiplicity(6)
    assert diff.multiplicity(4) == 4
    with pytest.raises(PrecisionLoss):
        diff.inverse()


@pytest.mark.property
def test_series_value_matches_exact():
    s = HyperSeries((Poch(1, 1, 2), Poch(-1, 0, 4)), (Poch(-1, 1, 2), Poch(1, 4, 4)), 7, lin=2)
    exact = sum_products(s.terms()).ratfun
    for n in (3, 5, 7, 9, 15):
        ring = local_ring(n)
        for prec in (1, 2, 3):
            fast = ring.series_value(s, prec)
            slow = ring.from_ratfun(exact, prec)
            assert fast.abs_prec >= prec
            assert fast.residue(prec) == slow.residue(prec)
