import math

import pytest
import sympy

from conftest import Q, from_sympy
from qcong.core_arith import QPoly
from qcong.errors import InvalidParams, ZeroInput
from qcong.numthy import divisors, prime_power_base, totient
from qcong.qalg import (AQLaurent, cyclotomic, cyclotomic_multiplicity, q_binomial, q_int,
                        q_pochhammer, q_pochhammer_parametric)


def P(*c):
    return QPoly(list(c))


def test_cyclotomic_examples():
    assert cyclotomic(1) == P(-1, 1)
    assert cyclotomic(6) == P(1, -1, 1)
    assert cyclotomic(9)(1) == 3
    with pytest.raises(InvalidParams):
        cyclotomic(0)


@pytest.mark.property
def test_cyclotomic_against_sympy():
    for n in list(range(1, 120)) + [105, 210, 385, 1155]:
        assert cyclotomic(n) == from_sympy(sympy.cyclotomic_poly(n, Q))
        assert cyclotomic(n).degree == totient(n)


@pytest.mark.property
def test_cyclotomic_product_formula():
    for n in range(1, 201):
        prod = QPoly(1)
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        assert prod == QPoly({n: 1, 0: -1})


@pytest.mark.property
def test_cyclotomic_at_one():
    for n in range(2, 201):
        base = prime_power_base(n)
        assert cyclotomic(n)(1) == (base if base else 1)


@pytest.mark.property
def test_cyclotomic_substitution():
    for n in range(3, 16, 2):
        for j in (1, 2):
            if n ** (j + 1) > 3375:
                continue
            assert cyclotomic(n ** j).substitute_power(n) == cyclotomic(n ** (j + 1))


def test_q_int_and_pochhammer():
    assert q_int(1, 7) == P(1)
    assert q_int(3) == P(1, 1, 1)
    assert q_int(3, 5) == QPoly({0: 1, 5: 1, 10: 1})
    assert q_pochhammer(3, 2, 0) == P(1)
    assert q_pochhammer(1, 2, 2) == P(1, -1) * QPoly({0: 1, 3: -1})
    assert q_pochhammer(0, 4, 1, -1) == P(2)


def test_q_binomial_examples():
    assert q_binomial(2, 1) == P(1, 1)
    assert q_binomial(4, 2) == P(1, 1, 2, 1, 1)
    assert q_binomial(1, 2) == QPoly()
    assert q_binomial(5, 2, 3) == q_binomial(5, 2).substitute_power(3)


@pytest.mark.property
def test_q_binomial_limit_and_pascal():
    for m in range(21):
        for k in range(m + 1):
            assert q_binomial(m, k)(1) == math.comb(m, k)
    for m in range(1, 13):
        for k in range(1, m):
            rhs = q_binomial(m - 1, k - 1) + q_binomial(m - 1, k).shift(k)
            assert q_binomial(m, k) == rhs


def test_q_binomial_against_product_formula():
    for m in range(12):
        for k in range(m + 1):
            expr = sympy.Mul(*[(1 - Q ** (m - i)) / (1 - Q ** (i + 1)) for i in range(k)])
            assert q_binomial(m, k) == from_sympy(sympy.cancel(expr))


def test_cyclotomic_multiplicity():
    assert cyclotomic_multiplicity(QPoly({6: 1, 0: -1}), 3) == 1
    assert cyclotomic_multiplicity(cyclotomic(5) ** 2, 5) == 2
    p = q_int(3, 5) ** 2 * q_binomial(2, 1, 5)
    # Φ_15 comes only from the two [3]_{q^5} factors (independent factorization agrees)
    assert cyclotomic_multiplicity(p, 15) == 2
    with pytest.raises(ZeroInput):
        cyclotomic_multiplicity(QPoly(), 3)


@pytest.mark.property
def test_parametric_pochhammer():
    assert q_pochhammer_parametric(1, 1, 2, 0) == AQLaurent({0: P(1)})
    assert q_pochhammer_parametric(1, 1, 2, 1) == AQLaurent({0: P(1), 1: P(0, -1)})
    assert q_pochhammer_parametric(-1, 1, 2, 2).evaluate(3) == QPoly()
    for e in range(0, 6):
        for k in range(5):
            got = q_pochhammer_parametric(1, 1, 2, k).evaluate(e)
            assert got == q_pochhammer(1 + e, 2, k)


def test_aqlaurent_arithmetic():
    x = AQLaurent({1: P(1), -1: P(0, 1)})
    y = AQLaurent({0: P(2)})
    assert (x * y).evaluate(2) == x.evaluate(2) * 2
    assert (x - x).is_zero()
    assert x.shift_a(2).a_degree == 3
