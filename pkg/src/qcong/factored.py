"""Products of signed q-binomials and their exact summation.

Every summand in this engine is a product ``c * q^s * prod (1 - sign*q^e)^mult``.
Each binomial splits into cyclotomic polynomials over Z::

    1 - q^e = -prod_{d | e} Φ_d            (e > 0)
    1 + q^e =  prod_{d | 2e, d ∤ e} Φ_d    (e > 0)

so sums of such products can be put over a common denominator and reduced by
cancelling cyclotomic factors one at a time, with no general polynomial GCD.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .core_arith import ONE, ZERO, Coef, QPoly, RatFun, _norm
from .qalg import cyclotomic
from .numthy import divisors

Factor = tuple  # (sign, exponent, multiplicity)


@lru_cache(maxsize=4096)
def binomial_cyclotomic_indices(sign: int, e: int) -> tuple[int, ...]:
    """Indices d with Φ_d dividing ``1 - sign*q^e`` (``e > 0``)."""
    if e <= 0:
        raise ValueError("positive exponent expected")
    if sign == 1:
        return tuple(divisors(e))
    return tuple(d for d in divisors(2 * e) if e % d)


def factor_valuation(sign: int, e: int, n: int) -> int:
    """Multiplicity of Φ_n (n >= 1) in ``1 - sign*q^e``; the zero factor is excluded."""
    e = abs(e)
    if e == 0:
        return 0
    if sign == 1:
        return 1 if e % n == 0 else 0
    return 1 if (2 * e) % n == 0 and e % n else 0


@dataclass(frozen=True)
class QProduct:
    """``coef * q^q_power * prod (1 - sign q^e)^mult`` over the factor tuple."""

    coef: Coef = 1
    q_power: int = 0
    factors: tuple = ()

    def __mul__(self, other: "QProduct") -> "QProduct":
        if not isinstance(other, QProduct):
            return QProduct(_norm(Fraction(self.coef) * other), self.q_power, self.factors)
        return QProduct(_norm(Fraction(self.coef) * other.coef),
                        self.q_power + other.q_power, self.factors + other.factors)

    __rmul__ = __mul__

    def inverse(self) -> "QProduct":
        return QProduct(_norm(1 / Fraction(self.coef)), -self.q_power,
                        tuple((s, e, -m) for s, e, m in self.factors))

    def cyclotomic_form(self) -> tuple[Coef, int, Counter] | None:
        """``(c, s, {d: exponent})`` with value ``c * q^s * prod Φ_d^exponent``, or
        None when the product is identically zero."""
        coef = Fraction(self.coef)
        if not coef:
            return None
        s = self.q_power
        exps: Counter = Counter()
        zero = False
        for sign, e, mult in self.factors:
            if not mult:
                continue
            if e == 0:
                if sign == 1:
                    if mult < 0:
                        raise ZeroDivisionError("vanishing factor in a denominator")
                    zero = True
                else:
                    coef *= Fraction(2) ** mult
                continue
            if e < 0:
                coef *= (-sign) ** abs(mult)
                s += e * mult
                e = -e
            if sign == 1 and mult % 2:
                coef = -coef
            for d in binomial_cyclotomic_indices(sign, e):
                exps[d] += mult
        if zero:
            return None
        return _norm(coef), s, Counter({d: v for d, v in exps.items() if v})

    def valuation(self, n: int) -> int:
        return sum(m * factor_valuation(s, e, n) for s, e, m in self.factors)

    def is_zero(self) -> bool:
        return self.cyclotomic_form() is None

    def to_ratfun(self) -> RatFun:
        return sum_products([self]).ratfun


@dataclass(frozen=True)
class Poch:
    """(sign*q^base; q^step)_k, as the factors ``1 - sign q^(base + i*step)``."""

    sign: int
    base: int
    step: int

    def factor(self, i: int) -> tuple[int, int]:
        return self.sign, self.base + i * self.step

    def scaled(self, s: int) -> "Poch":
        return Poch(self.sign, self.base * s, self.step * s)


@dataclass(frozen=True)
class HyperSeries:
    """sum_{k=0}^{upper} coef * fixed * q^(quad k^2 + lin k + const)
    * prod numer_k / prod denom_k."""

    numer: tuple
    denom: tuple
    upper: int
    quad: int = 0
    lin: int = 0
    const: int = 0
    coef: Coef = 1
    fixed: QProduct = field(default_factory=QProduct)

    def q_exponent(self, k: int) -> int:
        return self.quad * k * k + self.lin * k + self.const

    def term(self, k: int) -> QProduct:
        factors = [(p.sign, p.base + i * p.step, 1) for p in self.numer for i in range(k)]
        factors += [(p.sign, p.base + i * p.step, -1) for p in self.denom for i in range(k)]
        return QProduct(self.coef, self.q_exponent(k), tuple(factors)) * self.fixed

    def terms(self) -> Iterator[QProduct]:
        for k in range(self.upper + 1):
            yield self.term(k)

    def scaled(self, c) -> "HyperSeries":
        return HyperSeries(self.numer, self.denom, self.upper, self.quad, self.lin,
                           self.const, _norm(Fraction(self.coef) * c), self.fixed)

    def with_fixed(self, extra: QProduct) -> "HyperSeries":
        return HyperSeries(self.numer, self.denom, self.upper, self.quad, self.lin,
                           self.const, self.coef, self.fixed * extra)

    def shifted(self, s: int) -> "HyperSeries":
        return HyperSeries(self.numer, self.denom, self.upper, self.quad, self.lin,
                           self.const + s, self.coef, self.fixed)


# ---------------------------------------------------------------------------


def cyclotomic_power_product(exps: dict) -> QPoly:
    """Expand prod Φ_d^e (all e >= 0) with a balanced product tree."""
    polys: list = []
    for d, e in sorted(exps.items()):
        if e < 0:
            raise ValueError("negative exponent in a polynomial product")
        if e:
            polys.append(cyclotomic(d) ** e if e > 1 else cyclotomic(d))
    return product_tree(polys)


def product_tree(polys: Sequence[QPoly]) -> QPoly:
    polys = list(polys)
    if not polys:
        return ONE
    while len(polys) > 1:
        polys.sort(key=lambda p: p.degree)
        nxt = [polys[i] * polys[i + 1] for i in range(0, len(polys) - 1, 2)]
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def _divisible_by_cyclotomic(p: QPoly, d: int) -> bool:
    """Whether Φ_d | p, via folding p modulo q^d - 1 first."""
    folded: dict = {}
    for e, c in p.terms.items():
        r = e % d
        folded[r] = folded.get(r, 0) + c
    small = QPoly({e: c for e, c in folded.items() if c})
    if not small:
        return True
    return not (small % cyclotomic(d))


@dataclass(frozen=True)
class FactoredSum:
    """A reduced rational function together with the cyclotomic factorization
    of its (monic) denominator ``q^den_q_power * prod Φ_d^e``."""

    ratfun: RatFun
    den_exponents: dict
    den_q_power: int


def sum_products(terms: Iterable[QProduct]) -> FactoredSum:
    """Exact sum of products, returned in lowest terms."""
    forms = [f for f in (t.cyclotomic_form() for t in terms) if f is not None]
    if not forms:
        return FactoredSum(RatFun._reduced(ZERO, ONE), {}, 0)
    den: Counter = Counter()
    q_den = 0
    for _, s, exps in forms:
        q_den = max(q_den, -s)
        for d, v in exps.items():
            if v < 0:
                den[d] = max(den[d], -v)
    num = ZERO
    for c, s, exps in forms:
        cof = {d: exps.get(d, 0) + den.get(d, 0) for d in set(exps) | set(den)}
        num = num + cyclotomic_power_product(cof).shift(s + q_den).to_qpoly() * c
    if not num:
        return FactoredSum(RatFun._reduced(ZERO, ONE), {}, 0)
    low = min(num.terms)
    cancel = min(low, q_den)
    if cancel:
        num = num.shift(-cancel).to_qpoly()
        q_den -= cancel
    for d in sorted(den):
        while den[d] and _divisible_by_cyclotomic(num, d):
            num = num.exact_div(cyclotomic(d))
            den[d] -= 1
    den = {d: v for d, v in den.items() if v}
    den_poly = cyclotomic_power_product(den).shift(q_den).to_qpoly()
    return FactoredSum(RatFun._reduced(num, den_poly), den, q_den)
