"""Builders for the finite sums: five q-families, the parametric family, and
the two numeric binomial sums modulo p^r."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core_arith import QPoly, RatFun, extract_multiplicity
from .errors import InvalidParams, NonInvertible, PoleAtOne, WrongFamily
from .factored import HyperSeries, Poch, QProduct, sum_products
from .numthy import ModInt, ModRing, central_binomial
from .qalg import AQLaurent, cyclotomic, q_pochhammer, q_pochhammer_parametric


class SumFamily(str, enum.Enum):
    EQ15 = "EQ15"
    EQ13_GG = "EQ13_GG"
    EQ14_GL = "EQ14_GL"
    EQ42 = "EQ42"
    WHIPPLE_SPECIAL = "WHIPPLE_SPECIAL"
    PARAM32 = "PARAM32"
    NUM8 = "NUM8"
    NUM16 = "NUM16"

    @property
    def is_numeric(self) -> bool:
        return self in (SumFamily.NUM8, SumFamily.NUM16)


# (q;q^2)_k, (-q;q^2)_k, (q^2;q^2)_k, (q^4;q^4)_k, (-1;q^4)_k
_Q_Q2 = Poch(1, 1, 2)
_MQ_Q2 = Poch(-1, 1, 2)
_Q2_Q2 = Poch(1, 2, 2)
_Q4_Q4 = Poch(1, 4, 4)
_M1_Q4 = Poch(-1, 0, 4)


@dataclass(frozen=True)
class SumCase:
    family: SumFamily
    upper: int
    step: int = 1
    extra: int | None = None

    def __post_init__(self):
        if self.upper < 0 or self.step < 1:
            raise InvalidParams("need upper >= 0 and step >= 1")
        if self.family in (SumFamily.WHIPPLE_SPECIAL, SumFamily.PARAM32) and self.extra is None:
            raise InvalidParams(f"{self.family.value} needs the extra parameter")


def series(case: SumCase) -> HyperSeries:
    """The summand shape of a q-family, with ``q -> q^step`` applied.

    For PARAM32 ``extra`` is the exponent in ``a = q^extra``; it is not scaled by
    ``step``.  WHIPPLE_SPECIAL with ``extra = n`` is PARAM32 at ``a = q^-n``.
    """
    fam = case.family
    if fam.is_numeric:
        raise WrongFamily(f"{fam.value} is a numeric family")
    if fam == SumFamily.EQ15:
        num, den, quad, lin = (_Q_Q2, _M1_Q4), (_MQ_Q2, _Q4_Q4), 0, 2
    elif fam == SumFamily.EQ13_GG:
        num, den, quad, lin = (_Q_Q2,), (_Q2_Q2, _MQ_Q2), 0, 2
    elif fam == SumFamily.EQ14_GL:
        num, den, quad, lin = (_Q_Q2,), (_Q4_Q4,), 1, 0
    elif fam == SumFamily.EQ42:
        num, den, quad, lin = (_Q_Q2,), (_Q4_Q4, _MQ_Q2), 0, 2
    else:
        e = -case.extra if fam == SumFamily.WHIPPLE_SPECIAL else case.extra
        s = case.step
        # (a q^s; q^2s)_k (q^s/a; q^2s)_k with a = q^e; the a-exponent stays unscaled
        num = (Poch(1, s + e, 2 * s), Poch(1, s - e, 2 * s), _M1_Q4.scaled(s))
        den = tuple(p.scaled(s) for p in (_Q_Q2, _MQ_Q2, _Q4_Q4))
        return HyperSeries(num, den, case.upper, 0, 2 * s)
    s = case.step
    return HyperSeries(tuple(p.scaled(s) for p in num), tuple(p.scaled(s) for p in den),
                       case.upper, quad * s, lin * s)


def summand_product(case: SumCase, k: int) -> QProduct:
    if not 0 <= k <= case.upper:
        raise InvalidParams(f"k={k} outside 0..{case.upper}")
    return series(case).term(k)


def summand(case: SumCase, k: int) -> RatFun:
    return summand_product(case, k).to_ratfun()


@lru_cache(maxsize=256)
def partial_sum(case: SumCase) -> RatFun:
    return sum_products(series(case).terms()).ratfun


# ---------------------------------------------------------------------------
# parametric family


class ParametricSum:
    """sum_k (a q^s; q^2s)_k (q^s/a; q^2s)_k (-1; q^4s)_k q^(2sk)
    / ((q^s; q^2s)_k (-q^s; q^2s)_k (q^4s; q^4s)_k) with ``a`` symbolic.

    Numerators are AQLaurent, denominators are a-free polynomials in q.
    """

    def __init__(self, upper: int, step: int = 1):
        if upper < 0 or step < 1:
            raise InvalidParams("need upper >= 0 and step >= 1")
        self.upper = upper
        self.step = step
        self._terms: list | None = None

    @property
    def terms(self) -> list[tuple[AQLaurent, QPoly]]:
        if self._terms is None:
            s = self.step
            out = []
            for k in range(self.upper + 1):
                num = (q_pochhammer_parametric(1, s, 2 * s, k)
                       * q_pochhammer_parametric(-1, s, 2 * s, k)
                       * AQLaurent({0: q_pochhammer(0, 4 * s, k, -1) * QPoly({2 * s * k: 1})}))
                den = (q_pochhammer(s, 2 * s, k) * q_pochhammer(s, 2 * s, k, -1)
                       * q_pochhammer(4 * s, 4 * s, k))
                out.append((num, den))
            self._terms = out
        return self._terms

    def denominator_product(self, k: int) -> QProduct:
        """The a-free denominator of the k-th term, in factored form."""
        s = self.step
        pochs = [p.scaled(s) for p in (_Q_Q2, _MQ_Q2, _Q4_Q4)]
        return QProduct(1, 0, tuple((p.sign, p.base + i * p.step, 1)
                                    for p in pochs for i in range(k)))

    def evaluate(self, q_exp: int) -> RatFun:
        """Exact value at ``a = q^q_exp`` (factored route)."""
        return partial_sum(SumCase(SumFamily.PARAM32, self.upper, self.step, q_exp))

    def evaluate_expanded(self, q_exp: int) -> RatFun:
        """Exact value at ``a = q^q_exp`` by expanding the AQLaurent numerators."""
        total = RatFun(0)
        for num, den in self.terms:
            total = total + RatFun(num.evaluate(q_exp), den)
        return total


def parametric_sum(upper: int, step: int = 1) -> ParametricSum:
    return ParametricSum(upper, step)


# ---------------------------------------------------------------------------
# numeric sums and q -> 1 limits


def numeric_sum(family: SumFamily, upper: int, ring: ModRing) -> ModInt:
    """sum_{k=0}^{upper} C(2k, k) / b^k in Z/p^r, b = 8 or 16."""
    family = SumFamily(family)
    if family == SumFamily.NUM8:
        b = 8
    elif family == SumFamily.NUM16:
        b = 16
    else:
        raise WrongFamily(f"{family.value} is not a numeric family")
    if upper < 0:
        raise InvalidParams("upper must be nonnegative")
    m = ring.modulus
    if b % ring.p == 0:
        raise NonInvertible(f"{b} is not invertible modulo {m}")
    inv = pow(b, -1, m)
    total, scale = 0, 1
    for k in range(upper + 1):
        total = (total + central_binomial(k) * scale) % m
        scale = scale * inv % m
    return ModInt(total, ring)


def limit_at_one(x: RatFun) -> Fraction:
    """Exact value of ``x`` as q -> 1, cancelling powers of (q - 1)."""
    if not x.num:
        return Fraction(0)
    phi1 = cyclotomic(1)
    mu, num = extract_multiplicity(x.num, phi1)
    nu, den = extract_multiplicity(x.den, phi1)
    if nu > mu:
        raise PoleAtOne("denominator vanishes to higher order at q = 1")
    if mu > nu:
        return Fraction(0)
    return Fraction(num(1)) / Fraction(den(1))


def term_limit_at_1(family: SumFamily, k: int) -> Fraction:
    family = SumFamily(family)
    if family.is_numeric:
        raise WrongFamily(f"{family.value} is a numeric family")
    if k < 0:
        raise InvalidParams("k must be nonnegative")
    if family in (SumFamily.WHIPPLE_SPECIAL, SumFamily.PARAM32):
        raise InvalidParams(f"{family.value} has no parameter-free q -> 1 limit")
    return limit_at_one(summand(SumCase(family, k), k))


__all__ = [
    "SumFamily", "SumCase", "series", "summand", "summand_product", "partial_sum",
    "ParametricSum", "parametric_sum", "numeric_sum", "limit_at_one", "term_limit_at_1",
]
