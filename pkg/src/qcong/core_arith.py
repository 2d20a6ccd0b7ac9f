"""Exact sparse Laurent polynomials and rational functions in ``q`` over Q.

Coefficients are stored as ``int`` when integral and as
:class:`fractions.Fraction` otherwise, so the integer-coefficient objects that
dominate q-series work never pay for rational normalization.  All values are
immutable; every operation returns a new object.

Large dense products go through Kronecker substitution (one big-integer
multiplication).  Polynomial GCDs use the primitive pseudo-remainder sequence
over Z, which keeps intermediate coefficients content-free instead of letting
rational Euclid blow them up.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

from .errors import BothZero, DivisionByZeroPoly, ZeroInput

Rational = Fraction

NEG_INF = float("-inf")

Coef = Union[int, Fraction]

# Products with fewer coefficient pairs than this stay on the schoolbook path.
_KRONECKER_MIN_PAIRS = 256


def _coef(c) -> Coef:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, _RationalABC):
        return _coef(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


def _norm(c: Coef) -> Coef:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# dense helpers (ascending coefficient lists)


def _dense(terms: Mapping[int, Coef], lo: int, hi: int) -> list:
    out = [0] * (hi - lo + 1)
    for e, c in terms.items():
        out[e - lo] = c
    return out


def _sparse(coeffs: Iterable[Coef], offset: int = 0) -> dict:
    return {i + offset: _norm(c) for i, c in enumerate(coeffs) if c}


def _common_denominator(values: Iterable[Coef]) -> int:
    den = 1
    for c in values:
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return den


def _kronecker(a: list, b: list) -> list:
    """Product of two dense integer coefficient lists."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    full = 1 << (8 * width)
    half = full >> 1
    zero = bytes(width)

    def pack(coeffs):
        pos = b"".join(c.to_bytes(width, "little") if c > 0 else zero for c in coeffs)
        neg = b"".join((-c).to_bytes(width, "little") if c < 0 else zero for c in coeffs)
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    r = pack(a) * pack(b)
    n = len(a) + len(b) - 1
    negative = r < 0
    raw = abs(r).to_bytes(n * width, "little")
    out = []
    carry = 0
    for i in range(0, n * width, width):
        v = int.from_bytes(raw[i:i + width], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        out.append(v)
    if negative:
        out = [-v for v in out]
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        ((e, c),) = a.items()
        return {e + f: _norm(c * d) for f, d in b.items()}
    if len(a) * len(b) >= _KRONECKER_MIN_PAIRS:
        a_lo, a_hi = min(a), max(a)
        b_lo, b_hi = min(b), max(b)
        span = (a_hi - a_lo) + (b_hi - b_lo) + 1
        if 4 * span < len(a) * len(b):
            da = _common_denominator(a.values())
            db = _common_denominator(b.values())
            ia = _dense({e: int(c * da) for e, c in a.items()}, a_lo, a_hi)
            ib = _dense({e: int(c * db) for e, c in b.items()}, b_lo, b_hi)
            prod = _kronecker(ia, ib)
            scale = da * db
            if scale == 1:
                return {i + a_lo + b_lo: c for i, c in enumerate(prod) if c}
            return {i + a_lo + b_lo: _norm(Fraction(c, scale)) for i, c in enumerate(prod) if c}
    out: dict = {}
    get = out.get
    for e, c in a.items():
        for f, d in b.items():
            k = e + f
            out[k] = get(k, 0) + c * d
    return {k: _norm(v) for k, v in out.items() if v}


def _divrem_dense(num: list, den: list) -> tuple[list, list]:
    """Long division of ascending lists; ``den[-1]`` must be nonzero."""
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [], list(num)
    r = list(num)
    lc = den[-1]
    unit = lc == 1 or lc == -1
    inv = lc if unit else Fraction(1, 1) / lc
    tail = [(j, c) for j, c in enumerate(den[:-1]) if c]
    quo = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = r[i]
        if c:
            qc = c * inv
            base = i - dn
            quo[base] = qc
            for j, dc in tail:
                r[base + j] -= qc * dc
            r[i] = 0
    return quo, r[:dn]


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _primitive(coeffs: list) -> list:
    g = math.gcd(*coeffs)
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer lists: lc(b)^(da-db+1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, c in enumerate(b):
            r[shift + j] -= lr * c
        _trim(r)
    return r


# ---------------------------------------------------------------------------


class QLaurent:
    """Sparse Laurent polynomial in ``q`` with rational coefficients.

    ``QLaurent({-1: 1, 2: Fraction(1, 2)})`` is ``q^-1 + q^2/2``.  A dense list
    of ascending coefficients, or a bare scalar, is accepted too.
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        if terms is None:
            t = {}
        elif isinstance(terms, QLaurent):
            t = dict(terms._t)
        elif _is_scalar(terms) or isinstance(terms, _RationalABC):
            c = _coef(terms)
            t = {0: c} if c else {}
        elif isinstance(terms, Mapping):
            t = {}
            for e, c in terms.items():
                if not isinstance(e, int):
                    raise TypeError("exponents must be integers")
                c = _coef(c)
                if c:
                    t[e] = c
        else:
            t = {i: c for i, c in ((i, _coef(c)) for i, c in enumerate(terms)) if c}
        self._check(t)
        self._t = t

    @staticmethod
    def _check(t: dict) -> None:
        pass

    @classmethod
    def _raw(cls, t: dict):
        obj = object.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def monomial(cls, exponent: int, coef: Coef = 1):
        c = _coef(coef)
        return cls({exponent: c} if c else {})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    @property
    def degree(self):
        return max(self._t) if self._t else NEG_INF

    @property
    def low_degree(self):
        return min(self._t) if self._t else NEG_INF

    def coeff(self, e: int) -> Coef:
        return self._t.get(e, 0)

    @property
    def leading_coefficient(self) -> Coef:
        return self._t[max(self._t)] if self._t else 0

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Coef:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._t.get(0, 0)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._t.values())

    # -- arithmetic --------------------------------------------------------

    def _kind(self, other):
        if type(self) is QPoly and type(other) is QPoly:
            return QPoly
        return QLaurent

    def _lift(self, other):
        if isinstance(other, QLaurent):
            return other
        if _is_scalar(other):
            return QPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = _norm(v)
            else:
                t.pop(e, None)
        return self._kind(other)._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({e: -c for e, c in self._t.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = _coef(other)
            if not c:
                return type(self)._raw({})
            return type(self)._raw({e: _norm(v * c) for e, v in self._t.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._kind(other)._raw(_mul_terms(self._t, other._t))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("nonnegative integer power expected")
        result = type(self)._raw({0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, s: int) -> "QLaurent":
        """Multiply by ``q**s``."""
        t = {e + s: c for e, c in self._t.items()}
        if type(self) is QPoly and (not t or min(t) >= 0):
            return QPoly._raw(t)
        return QLaurent._raw(t)

    def substitute_power(self, s: int):
        if s < 1:
            raise ValueError("substitution exponent must be positive")
        return type(self)._raw({e * s: c for e, c in self._t.items()})

    def __call__(self, x):
        return eval_rational(self, x)

    def to_qpoly(self) -> "QPoly":
        if self._t and min(self._t) < 0:
            raise ValueError("negative exponent present")
        return QPoly._raw(dict(self._t))

    def cleared(self) -> tuple[int, "QPoly"]:
        """Return ``(s, P)`` with ``q**s * self == P`` a polynomial and ``s >= 0`` minimal."""
        s = max(0, -min(self._t)) if self._t else 0
        return s, QPoly._raw({e + s: c for e, c in self._t.items()})

    def dense(self) -> list:
        """Ascending coefficients from exponent 0 (polynomials only)."""
        if not self._t:
            return []
        return _dense(self._t, 0, max(self._t)) if min(self._t) >= 0 else self.to_qpoly().dense()

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        if _is_scalar(other):
            other = QPoly(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e, c in sorted(self._t.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


class QPoly(QLaurent):
    """Sparse polynomial in ``q`` with rational coefficients (exponents >= 0)."""

    __slots__ = ()

    @staticmethod
    def _check(t: dict) -> None:
        if t and min(t) < 0:
            raise ValueError("QPoly exponents must be nonnegative")

    def monic(self) -> "QPoly":
        if not self._t:
            return self
        lc = self.leading_coefficient
        if lc == 1:
            return self
        return self * (Fraction(1) / lc)

    def __divmod__(self, other):
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return poly_divrem(self, other)[0]

    def __mod__(self, other):
        return poly_divrem(self, other)[1]

    def exact_div(self, other: "QPoly") -> "QPoly":
        quo, rem = poly_divrem(self, other)
        if rem:
            raise ArithmeticError("division is not exact")
        return quo


ONE = QPoly({0: 1})
ZERO = QPoly({})
Q = QPoly({1: 1})


def as_qpoly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, QLaurent):
        return x.to_qpoly()
    return QPoly(x)


# ---------------------------------------------------------------------------
# polynomial operations


def poly_arith(lhs: QLaurent, rhs: QLaurent, op: str) -> QLaurent:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def poly_divrem(num: QPoly, den: QPoly) -> tuple[QPoly, QPoly]:
    num, den = as_qpoly(num), as_qpoly(den)
    if not den:
        raise DivisionByZeroPoly("division by the zero polynomial")
    if not num:
        return ZERO, ZERO
    if len(den._t) == 1:
        ((e, c),) = den._t.items()
        inv = Fraction(1) / c
        quo = {k - e: _norm(v * inv) for k, v in num._t.items() if k >= e}
        rem = {k: v for k, v in num._t.items() if k < e}
        return QPoly._raw(quo), QPoly._raw(rem)
    low = min(den._t)
    if low and min(num._t) >= low:
        # common power of q: divide it out of both and shift the remainder back
        quo, rem = poly_divrem(QPoly._raw({k - low: v for k, v in num._t.items()}),
                               QPoly._raw({k - low: v for k, v in den._t.items()}))
        return quo, rem.shift(low).to_qpoly()
    quo, rem = _divrem_dense(num.dense(), den.dense())
    return QPoly._raw(_sparse(quo)), QPoly._raw(_sparse(rem))


def _to_primitive_int(p: QPoly) -> list:
    coeffs = p.dense()
    den = _common_denominator(coeffs)
    return _primitive([int(c * den) for c in coeffs])


def poly_gcd(p1: QPoly, p2: QPoly) -> QPoly:
    """Monic GCD via the primitive pseudo-remainder sequence over Z."""
    p1, p2 = as_qpoly(p1), as_qpoly(p2)
    if not p1 and not p2:
        raise BothZero("gcd(0, 0) is undefined")
    if not p2:
        return p1.monic()
    if not p1:
        return p2.monic()
    # powers of q split off cheaply
    lo = min(min(p1._t), min(p2._t))
    if lo:
        g = poly_gcd(QPoly._raw({e - min(p1._t): c for e, c in p1._t.items()}),
                     QPoly._raw({e - min(p2._t): c for e, c in p2._t.items()}))
        return g.shift(lo).to_qpoly()
    if p1.degree == 0 or p2.degree == 0:
        return ONE
    a, b = _to_primitive_int(p1), _to_primitive_int(p2)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            a = b
            break
        a, b = b, _primitive(r)
    else:
        return ONE
    return QPoly._raw(_sparse(a)).monic()


def extract_multiplicity(p: QPoly, d: QPoly, cap: int | None = None) -> tuple[int, QPoly]:
    """Largest ``k`` with ``d**k | p`` (stopping at ``cap`` if given), and ``p / d**k``."""
    p, d = as_qpoly(p), as_qpoly(d)
    if not p:
        raise ZeroInput("multiplicity in the zero polynomial is unbounded")
    if not isinstance(d.degree, int) or d.degree < 1:
        raise ValueError("divisor must have positive degree")
    k = 0
    while cap is None or k < cap:
        quo, rem = poly_divrem(p, d)
        if rem:
            break
        p = quo
        k += 1
    return k, p


def substitute_power(p, s: int):
    """Compose with ``q -> q**s``."""
    return p.substitute_power(s)


def eval_rational(p: QLaurent, x) -> Coef:
    x = _coef(x)
    if not p._t:
        return 0
    if x == 0 and min(p._t) < 0:
        raise ZeroDivisionError("negative power of q at q = 0")
    total = 0
    for e, c in p._t.items():
        total += c * (Fraction(x) ** e if e < 0 else x ** e)
    return _norm(Fraction(total)) if not isinstance(total, int) else total


# ---------------------------------------------------------------------------


class RatFun:
    """Reduced rational function ``num/den`` with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFun) or isinstance(den, RatFun):
            value = _as_ratfun(num) / _as_ratfun(den)
            self.num, self.den = value.num, value.den
            return
        num, den = _cleared_pair(num, den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g != ONE:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading_coefficient
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def _reduced(cls, num: QPoly, den: QPoly) -> "RatFun":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def from_laurent(cls, x: QLaurent) -> "RatFun":
        s, p = x.cleared()
        if not p:
            return cls._reduced(ZERO, ONE)
        if s == 0:
            return cls._reduced(p, ONE)
        return cls._reduced(p, QPoly._raw({s: 1}))

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def is_constant(self) -> bool:
        return self.den == ONE and self.num.is_constant()

    def __add__(self, other):
        other = _as_ratfun(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a:
            return other
        if not c:
            return self
        if b == ONE:
            return RatFun._reduced(a * d + c, d)
        if d == ONE:
            return RatFun._reduced(a + c * b, b)
        g = poly_gcd(b, d)
        if g == ONE:
            return RatFun._reduced(a * d + c * b, b * d)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        t = a * d1 + c * b1
        if not t:
            return RatFun._reduced(ZERO, ONE)
        h = poly_gcd(t, g)
        if h != ONE:
            t, g = t.exact_div(h), g.exact_div(h)
        return RatFun._reduced(t, b1 * d1 * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._reduced(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfun(other))

    def __rsub__(self, other):
        return _as_ratfun(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if not self.num or not other.num:
            return RatFun._reduced(ZERO, ONE)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFun._reduced(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        inv = Fraction(1) / self.num.leading_coefficient
        return RatFun._reduced(self.den * inv, self.num * inv)

    def __truediv__(self, other):
        return self * _as_ratfun(other).inverse()

    def __rtruediv__(self, other):
        return _as_ratfun(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun._reduced(self.num ** k, self.den ** k)

    def substitute_power(self, s: int) -> "RatFun":
        return RatFun._reduced(self.num.substitute_power(s), self.den.substitute_power(s))

    def __call__(self, x):
        d = eval_rational(self.den, x)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return _norm(Fraction(eval_rational(self.num, x)) / d)

    def __eq__(self, other):
        if isinstance(other, (QLaurent, int, Fraction)) and not isinstance(other, bool):
            other = _as_ratfun(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _cleared_pair(num, den) -> tuple[QPoly, QPoly]:
    num = num if isinstance(num, QLaurent) else QPoly(num)
    den = den if isinstance(den, QLaurent) else QPoly(den)
    s = 0
    if num and num.low_degree < 0:
        s = max(s, -num.low_degree)
    if den and den.low_degree < 0:
        s = max(s, -den.low_degree)
    if s:
        num, den = num.shift(s), den.shift(s)
    return num.to_qpoly(), den.to_qpoly()


def _as_ratfun(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, QLaurent):
        return RatFun.from_laurent(x)
    c = _coef(x)
    return RatFun._reduced(QPoly({0: c}) if c else ZERO, ONE)


def ratfun_arith(lhs: RatFun, rhs: RatFun, op: str) -> RatFun:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")
