import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qcong.errors import EvenModulus, InvalidParams, NonInvertible
from qcong.numthy import (ModRing, central_binomial, divisors, euler_number,
                          euler_numbers, floor_identities, is_prime, jacobi, mod_ops,
                          odd_primes, p_adic_valuation, prime_power_base, totient)


def test_jacobi_examples():
    assert jacobi(2, 1) == 1
    assert jacobi(2, 7) == 1
    assert jacobi(2, 15) == 1
    assert jacobi(3, 9) == 0
    with pytest.raises(EvenModulus):
        jacobi(2, 4)


def _brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


@pytest.mark.property
def test_jacobi_brute_force_and_sympy():
    for n in range(1, 100, 2):
        for a in range(-10, 30):
            expected = math.prod(_brute_legendre(a, p) ** k for p, k in sympy.factorint(n).items())
            assert jacobi(a, n) == expected == (sympy.jacobi_symbol(a % n, n) if n > 1 else 1)


@pytest.mark.property
def test_jacobi_multiplicativity_and_second_supplement():
    for n in range(1, 100, 2):
        assert jacobi(2, n) == (-1) ** ((n * n - 1) // 8)
        for j in range(0, 50):
            c = 2 * j + 1
            assert jacobi(2, c * n) == jacobi(2, n) * jacobi(2, c)


@pytest.mark.property
def test_euler_numbers():
    table = euler_numbers(200)
    assert table[:5] == [1, 0, -1, 0, 5]
    for n in range(0, 201):
        assert table[n] == sympy.euler(n)
    for half in range(1, 101):
        assert sum(math.comb(2 * half, 2 * k) * table[2 * k] for k in range(half + 1)) == 0
    assert euler_number(196) == sympy.euler(196)


def test_central_binomial():
    assert [central_binomial(k) for k in (0, 1, 5)] == [1, 2, 252]
    assert all(central_binomial(k) == math.factorial(2 * k) // math.factorial(k) ** 2 for k in range(40))


def test_mod_ops_examples():
    r9, r125, r27 = ModRing(3, 2), ModRing(5, 3), ModRing(3, 3)
    assert mod_ops(r9(8), r9(1), "inv").value == 8
    assert mod_ops(r125(4), r125(1), "inv").value == 94
    with pytest.raises(NonInvertible):
        mod_ops(r27(3), r27(1), "inv")
    assert mod_ops(r9(5), r9(7), "add").value == 3
    assert mod_ops(r9(5), r9(7), "mul").value == 8
    assert mod_ops(r9(2), r9(5), "pow").value == 5
    assert r125(Fraction(1, 4)) == r125(94)
    with pytest.raises(InvalidParams):
        ModRing(9, 1)


@pytest.mark.property
@settings(max_examples=500, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 4), st.integers(), st.integers())
def test_modint_field_behaviour(p, r, a, b):
    ring = ModRing(p, r)
    x, y = ring(a), ring(b)
    assert 0 <= x.value < ring.modulus
    assert (x + y).value == (a + b) % ring.modulus
    assert (x * y).value == (a * b) % ring.modulus
    if a % p:
        assert (x * x.inverse()).value == 1
        assert x / x == ring(1)


def test_is_prime():
    assert is_prime(2) and not is_prime(91) and is_prime(97) and not is_prime(1)
    assert [n for n in range(2000) if is_prime(n)] == list(sympy.primerange(0, 2000))
    for n in (2 ** 61 - 1, 2 ** 64 - 59, 3215031751, 3825123056546413051):
        assert is_prime(n) == sympy.isprime(n)
    assert odd_primes(3, 12) == [3, 5, 7, 11]


def test_small_helpers():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert all(totient(n) == sympy.totient(n) for n in range(1, 300))
    assert prime_power_base(27) == 3 and prime_power_base(15) is None
    assert p_adic_valuation(Fraction(50, 3), 5) == 2
    assert p_adic_valuation(0, 5) == math.inf


def test_floor_identities_examples():
    assert floor_identities(3, 5, 1) == (2, 2, 2)
    assert floor_identities(1, 3, 1) == (2, 0, 0)
    assert floor_identities(9, 3, 2)[1:] == (2, 2)
    with pytest.raises(InvalidParams):
        floor_identities(2, 3, 1)


@pytest.mark.property
def test_floor_identities_grid():
    for m in range(1, 26, 2):
        for n in range(3, 26, 2):
            for j in range(1, 5):
                lhs1, left, right = floor_identities(m, n, j)
                assert left == right
                if j == 1:
                    assert lhs1 == 2
