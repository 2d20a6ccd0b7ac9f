"""Named q-objects: cyclotomic polynomials, q-integers, q-shifted factorials,
q-binomial coefficients, and the Laurent-in-``a`` products used for the
parametric sums."""

from __future__ import annotations

from functools import lru_cache

from .core_arith import ONE, ZERO, QLaurent, QPoly, extract_multiplicity
from .errors import InvalidParams, ZeroInput
from .numthy import divisors


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> QPoly:
    """Φ_n(q), by exact division of q^n - 1 by Φ_d for the proper divisors d."""
    if n < 1:
        raise InvalidParams("cyclotomic index must be positive")
    p = QPoly({n: 1, 0: -1})
    for d in divisors(n)[:-1]:
        p = p.exact_div(cyclotomic(d))
    return p


def q_int(n: int, step: int = 1) -> QPoly:
    """[n]_{q^step} = 1 + q^step + ... + q^(step(n-1))."""
    if n < 1 or step < 1:
        raise InvalidParams("q_int needs n >= 1 and step >= 1")
    return QPoly({step * i: 1 for i in range(n)})


def q_pochhammer(base_q_exp: int, step: int, k: int, sign: int = 1) -> QPoly:
    """(sign*q^base; q^step)_k = prod_{i<k} (1 - sign*q^(base + i*step))."""
    if k < 0 or step < 1 or base_q_exp < 0 or sign not in (1, -1):
        raise InvalidParams("bad q-Pochhammer parameters")
    result = ONE
    for i in range(k):
        e = base_q_exp + i * step
        result = result * (QPoly({0: 1 - sign}) if e == 0 else QPoly({0: 1, e: -sign}))
    return result


def q_binomial(m: int, n: int, step: int = 1) -> QPoly:
    """Gaussian binomial [m choose n] in q^step; zero outside 0 <= n <= m."""
    if step < 1:
        raise InvalidParams("step must be positive")
    if not 0 <= n <= m:
        return ZERO
    n = min(n, m - n)
    # after t steps the running value is [m-n+t choose t], always a polynomial
    result = ONE
    for i in range(1, n + 1):
        result = (result * QPoly({0: 1, m - n + i: -1})).exact_div(QPoly({0: 1, i: -1}))
    return result.substitute_power(step) if step > 1 else result


def cyclotomic_multiplicity(p: QPoly, d: int) -> int:
    """Exponent of Φ_d(q) in ``p``."""
    if not p:
        raise ZeroInput("multiplicity in the zero polynomial is unbounded")
    return extract_multiplicity(p, cyclotomic(d))[0]


class AQLaurent:
    """Laurent polynomial in the parameter ``a`` whose coefficients are
    polynomials in ``q`` (Laurent coefficients are tolerated for division)."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if isinstance(terms, AQLaurent):
            t = dict(terms._t)
        elif terms is not None:
            if not isinstance(terms, dict):
                terms = {0: terms}
            for e, c in terms.items():
                c = c if isinstance(c, QLaurent) else QPoly(c)
                if c:
                    t[e] = c
        self._t = t

    @classmethod
    def _raw(cls, t):
        obj = object.__new__(cls)
        obj._t = t
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def coeff(self, e: int) -> QLaurent:
        return self._t.get(e, ZERO)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def a_degree(self):
        return max(self._t) if self._t else None

    @property
    def a_low_degree(self):
        return min(self._t) if self._t else None

    def _lift(self, other):
        if isinstance(other, AQLaurent):
            return other
        return AQLaurent(other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self._t)
        for e, c in other._t.items():
            v = t[e] + c if e in t else c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return AQLaurent._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return AQLaurent._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        t: dict = {}
        for e, c in self._t.items():
            for f, d in other._t.items():
                k = e + f
                t[k] = t[k] + c * d if k in t else c * d
        return AQLaurent._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def shift_a(self, s: int) -> "AQLaurent":
        """Multiply by ``a**s``."""
        return AQLaurent._raw({e + s: c for e, c in self._t.items()})

    def evaluate(self, q_exp: int) -> QLaurent:
        """Substitute ``a = q**q_exp``."""
        out = QPoly()
        for e, c in self._t.items():
            out = out + c.shift(e * q_exp)
        return out

    def __eq__(self, other):
        if not isinstance(other, AQLaurent):
            other = AQLaurent(other)
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        body = " + ".join(f"({c})*a^{e}" for e, c in sorted(self._t.items()))
        return f"AQLaurent({body or '0'})"


def q_pochhammer_parametric(a_exp: int, q_shift: int, step: int, k: int) -> AQLaurent:
    """prod_{i<k} (1 - a^a_exp * q^(q_shift + i*step)) with ``a_exp`` in {1, -1}."""
    if a_exp not in (1, -1) or step < 1 or k < 0:
        raise InvalidParams("bad parametric q-Pochhammer parameters")
    result = AQLaurent({0: ONE})
    for i in range(k):
        e = q_shift + i * step
        factor = AQLaurent({0: ONE, a_exp: -QLaurent.monomial(e) if e < 0 else -QPoly.monomial(e)})
        result = result * factor
    return result
