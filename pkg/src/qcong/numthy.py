"""Integer number theory: Jacobi symbols, Euler numbers, Z/p^r arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import EvenModulus, InvalidParams, NonInvertible

# Deterministic Miller-Rabin bases for every n < 3.3e24 (covers 64 bits).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 3), hi + 1) if p % 2 and is_prime(p)]


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("positive integer expected")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def prime_power_base(n: int) -> int | None:
    """``p`` if ``n = p**r`` with ``r >= 1``, else None."""
    f = factorize(n)
    return next(iter(f)) if len(f) == 1 else None


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd ``n >= 1``; (a/1) = 1."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def _euler_table(max_index: int) -> tuple[int, ...]:
    half = max_index // 2
    even = [1]
    for m in range(1, half + 1):
        even.append(-sum(math.comb(2 * m, 2 * k) * even[k] for k in range(m)))
    out = []
    for i in range(max_index + 1):
        out.append(even[i // 2] if i % 2 == 0 else 0)
    return tuple(out)


def euler_numbers(max_index: int) -> list[int]:
    """Euler (secant) numbers E_0..E_max with E_2 = -1, E_4 = 5."""
    if max_index < 0 or max_index % 2:
        raise InvalidParams("max_index must be a nonnegative even integer")
    return list(_euler_table(max_index))


def euler_number(n: int) -> int:
    return _euler_table(n + (n % 2))[n]


def central_binomial(k: int) -> int:
    if k < 0:
        raise InvalidParams("k must be nonnegative")
    return math.comb(2 * k, k)


def p_adic_valuation(x, p: int) -> int | float:
    """Valuation of a nonzero integer or Fraction; ``inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class ModRing:
    """The ring Z/p^r for an odd prime p."""

    p: int
    r: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise InvalidParams(f"ModRing needs an odd prime, got {self.p}")
        if self.r < 1:
            raise InvalidParams("exponent r must be positive")

    @property
    def modulus(self) -> int:
        return self.p ** self.r

    def __call__(self, x) -> "ModInt":
        """Reduce an integer, or a Fraction with p-free denominator."""
        x = Fraction(x)
        m = self.modulus
        if x.denominator % self.p == 0:
            raise NonInvertible(f"{x} has a denominator divisible by {self.p}")
        return ModInt(x.numerator * pow(x.denominator, -1, m) % m, self)


@dataclass(frozen=True)
class ModInt:
    value: int
    ring: ModRing

    def __post_init__(self):
        if not 0 <= self.value < self.ring.modulus:
            raise ValueError("value out of range")

    def _same(self, other) -> "ModInt":
        if isinstance(other, int):
            return self.ring(other)
        if not isinstance(other, ModInt) or other.ring != self.ring:
            raise TypeError("operands live in different rings")
        return other

    def __add__(self, other):
        other = self._same(other)
        return ModInt((self.value + other.value) % self.ring.modulus, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return ModInt(-self.value % self.ring.modulus, self.ring)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        return ModInt(self.value * other.value % self.ring.modulus, self.ring)

    __rmul__ = __mul__

    def inverse(self) -> "ModInt":
        if self.value % self.ring.p == 0:
            raise NonInvertible(f"{self.value} is not invertible modulo {self.ring.modulus}")
        return ModInt(pow(self.value, -1, self.ring.modulus), self.ring)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModInt(pow(self.value, k, self.ring.modulus), self.ring)

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} (mod {self.ring.modulus})"


def mod_ops(x: ModInt, y: ModInt | int | None, op: str) -> ModInt:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown op {op!r}")


def floor_identities(m: int, n: int, j: int) -> tuple[int, int, int]:
    """The three floor expressions used in the cyclotomic bookkeeping.

    Returns ``(2*(m//n^(j-1)) - 2*((m-1)//(2 n^(j-1))) - (mn-1)//n^j,
    (mn-1)//n^j, (m-1)//n^(j-1))``.  The first equals 2 when ``j == 1``;
    the last two agree for every ``j >= 1``.
    """
    if m < 1 or m % 2 == 0 or n < 3 or n % 2 == 0 or j < 1:
        raise InvalidParams(f"need odd m >= 1, odd n > 1, j >= 1; got {(m, n, j)}")
    d = n ** (j - 1)
    left = (m * n - 1) // (n ** j)
    lhs1 = 2 * (m // d) - 2 * ((m - 1) // (2 * d)) - left
    return lhs1, left, (m - 1) // d
