"""Arithmetic in Q[q] localized at Φ_n and truncated modulo a power of Φ_n.

A :class:`LocalValue` is ``Φ_n^val * u`` with ``u`` a unit known modulo
``Φ_n^rel``; the value itself is therefore known modulo ``Φ_n^(val + rel)``.
Sums that cancel lose relative precision, exactly like p-adic numbers.

Residues are dense ascending coefficient lists.  Moduli ``Φ_n^j`` are monic
with integer coefficients, so products of integral residues stay integral and
only the final inversion introduces fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core_arith import (QLaurent, QPoly, RatFun, _divrem_dense, _kronecker, _norm,
                         _trim, poly_divrem)
from .errors import NonInvertibleInQuotient, PrecisionLoss
from .factored import HyperSeries, QProduct, factor_valuation
from .qalg import cyclotomic


def _mul_dense(a: list, b: list) -> list:
    if not a or not b:
        return []
    if len(a) * len(b) > 64 and all(type(c) is int for c in a) and all(type(c) is int for c in b):
        return _kronecker(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add_dense(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _scale(a: list, c) -> list:
    return [_norm(x * c) for x in a]


class LocalRing:
    """Residue arithmetic modulo powers of Φ_n (n >= 2)."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("the local ring needs n >= 2")
        self.n = n
        self.phi = cyclotomic(n).dense()
        self.phi_degree = len(self.phi) - 1
        self._moduli = {0: [1], 1: self.phi}
        self._q_inv: dict = {}

    def modulus(self, j: int) -> list:
        if j not in self._moduli:
            half = self.modulus(j // 2)
            m = _mul_dense(half, half)
            if j % 2:
                m = _mul_dense(m, self.phi)
            self._moduli[j] = m
        return self._moduli[j]

    def reduce(self, a: list, j: int) -> list:
        if j <= 0:
            return []
        m = self.modulus(j)
        if len(a) < len(m):
            return _trim([_norm(c) for c in a])
        return _trim([_norm(c) for c in _divrem_dense(a, m)[1]])

    def mul(self, a: list, b: list, j: int) -> list:
        return self.reduce(_mul_dense(a, b), j)

    def split(self, a: list, cap: int) -> tuple[int, list]:
        """Strip up to ``cap`` factors of Φ_n from the polynomial ``a``."""
        a = _trim(list(a))
        t = 0
        while t < cap and a:
            if len(a) <= self.phi_degree:
                break
            quo, rem = _divrem_dense(a, self.phi)
            if any(rem):
                break
            a = _trim([_norm(c) for c in quo])
            t += 1
        return t, a

    def inverse(self, a: list, j: int) -> list:
        """Inverse modulo Φ_n^j: extended Euclid modulo Φ_n, then Newton lifting."""
        a = self.reduce(a, j)
        x = _invmod_euclid(self.reduce(a, 1), self.phi)
        prec = 1
        while prec < j:
            prec = min(2 * prec, j)
            ax = self.mul(a, x, prec)
            corr = [-c for c in ax] or [0]
            corr[0] += 2
            x = self.mul(x, corr, prec)
        return x

    def q_power(self, e: int, j: int) -> list:
        """Residue of q^e modulo Φ_n^j for any integer e."""
        if e < 0:
            key = j
            if key not in self._q_inv:
                self._q_inv[key] = self.inverse([0, 1], j)
            base, e = self._q_inv[key], -e
        else:
            base = [0, 1]
        result = [1]
        if e < len(self.modulus(j)) and base == [0, 1]:
            return self.reduce([0] * e + [1], j)
        while e:
            if e & 1:
                result = self.mul(result, base, j)
            e >>= 1
            if e:
                base = self.mul(base, base, j)
        return result

    def binomial_unit(self, q_e_residue: list, sign: int, e: int, j: int) -> tuple[int, list]:
        """``(v, u)`` with ``1 - sign q^e = Φ_n^v * u``, ``u`` modulo Φ_n^j.

        ``q_e_residue`` must be q^e modulo Φ_n^(j+1).
        """
        if e == 0:
            if sign == 1:
                raise ZeroDivisionError("the factor 1 - q^0 vanishes")
            return 0, [2]
        w = [-sign * c for c in q_e_residue] or [0]
        w[0] += 1
        v = factor_valuation(sign, e, self.n)
        if v:
            quo, rem = _divrem_dense(w, self.phi)
            if any(rem):
                raise ArithmeticError("cyclotomic bookkeeping disagrees with division")
            w = quo
        return v, self.reduce(w, j)

    # -- constructors for LocalValue --------------------------------------

    def from_poly(self, p: QLaurent, rel: int) -> "LocalValue":
        if not p:
            return LocalValue(self, None, 0, ())
        s, poly = p.cleared() if p.low_degree < 0 else (0, p.to_qpoly())
        t, u = self.split(poly.dense(), 10 ** 9)
        unit = self.reduce(u, rel)
        value = LocalValue(self, t, rel, tuple(unit))
        if s:
            value = value * LocalValue(self, 0, rel, tuple(self.q_power(-s, rel)))
        return value

    def from_ratfun(self, x: RatFun, rel: int) -> "LocalValue":
        num = self.from_poly(x.num, rel)
        if num.val is None:
            return num
        return num * self.from_poly(x.den, rel).inverse()

    def from_scalar(self, c, rel: int) -> "LocalValue":
        c = _norm(Fraction(c))
        if not c:
            return LocalValue(self, None, 0, ())
        return LocalValue(self, 0, rel, (c,))

    def from_product(self, prod: QProduct, rel: int) -> "LocalValue":
        """Exact factored product, unit part modulo Φ_n^rel."""
        if prod.is_zero():
            return LocalValue(self, None, 0, ())
        val = 0
        num = [prod.coef]
        den = [1]
        for sign, e, mult in prod.factors:
            if not mult:
                continue
            v, u = self.binomial_unit(self.q_power(e, rel + 1), sign, e, rel)
            val += v * mult
            for _ in range(abs(mult)):
                if mult > 0:
                    num = self.mul(num, u, rel)
                else:
                    den = self.mul(den, u, rel)
        num = self.mul(num, self.q_power(prod.q_power, rel), rel)
        unit = self.mul(num, self.inverse(den, rel), rel)
        return LocalValue(self, val, rel, tuple(unit))

    def series_value(self, series: HyperSeries, abs_prec: int) -> "LocalValue":
        """Value of a finite hypergeometric-type sum, known modulo Φ_n^abs_prec
        (or better)."""
        n = self.n
        vals = []
        v = 0
        stop = series.upper + 1
        for k in range(series.upper + 1):
            if k:
                i = k - 1
                if any(p.sign == 1 and p.base + i * p.step == 0 for p in series.numer):
                    stop = k
                    break
                if any(p.sign == 1 and p.base + i * p.step == 0 for p in series.denom):
                    raise ZeroDivisionError("vanishing factor in a denominator")
                v += sum(factor_valuation(p.sign, p.base + i * p.step, n) for p in series.numer)
                v -= sum(factor_valuation(p.sign, p.base + i * p.step, n) for p in series.denom)
            vals.append(v)
        fixed = series.fixed
        if fixed.is_zero() or not series.coef:
            return LocalValue(self, None, 0, ())
        vf = fixed.valuation(n)
        vmin = min(vals)
        rel = max(1, abs_prec - vmin - vf)
        rel1 = rel + 1

        pochs = list(series.numer) + list(series.denom)
        running = [self.q_power(p.base, rel1) for p in pochs]
        steps = [self.q_power(p.step, rel1) for p in pochs]
        n_num = len(series.numer)
        num_unit = [1]
        den_unit = [1]
        acc: list = []
        q_unit = self.q_power(series.q_exponent(0), rel)
        for k in range(stop):
            if k:
                i = k - 1
                for idx, p in enumerate(pochs):
                    e = p.base + i * p.step
                    _, u = self.binomial_unit(running[idx], p.sign, e, rel)
                    if idx < n_num:
                        num_unit = self.mul(num_unit, u, rel)
                    else:
                        den_unit = self.mul(den_unit, u, rel)
                        acc = self.mul(acc, u, rel)
                    running[idx] = self.mul(running[idx], steps[idx], rel1)
                delta = series.q_exponent(k) - series.q_exponent(k - 1)
                q_unit = self.mul(q_unit, self.q_power(delta, rel), rel)
            gap = vals[k] - vmin
            if gap < rel:
                term = self.mul(q_unit, num_unit, rel)
                if gap:
                    term = self.mul(term, self.modulus(gap), rel)
                acc = _add_dense(acc, term)
        body = self.mul(acc, self.inverse(den_unit, rel), rel)
        t, u = self.split(body, rel)
        if t == rel or not u:
            total = LocalValue(self, vmin + rel, 0, ())
        else:
            total = LocalValue(self, vmin + t, rel - t, tuple(self.reduce(u, rel - t)))
        scale = self.from_product(QProduct(series.coef, 0, ()) * fixed, rel)
        return total * scale


def _invmod_euclid(a: list, m: list) -> list:
    r0, r1 = QPoly(m), QPoly(a)
    s0, s1 = QPoly(), QPoly(1)
    while r1:
        quo, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise NonInvertibleInQuotient("element shares a factor with the modulus")
    inv = Fraction(1) / r0.leading_coefficient
    return (s0 * inv).dense()


@dataclass(frozen=True)
class LocalValue:
    """``Φ_n^val * unit`` with the unit known modulo ``Φ_n^rel``.

    ``val is None`` marks an exact zero; ``rel == 0`` marks a value known only
    to be divisible by ``Φ_n^val``.
    """

    ring: LocalRing
    val: int | None
    rel: int
    unit: tuple

    @property
    def is_exact_zero(self) -> bool:
        return self.val is None

    @property
    def abs_prec(self) -> float:
        return float("inf") if self.val is None else self.val + self.rel

    def _stretched(self, shift: int, width: int) -> list:
        """Φ_n^shift * unit reduced modulo Φ_n^width."""
        if self.val is None or self.rel == 0 or shift >= width:
            return []
        part = self.ring.reduce(list(self.unit), width - shift)
        if shift:
            part = _mul_dense(part, self.ring.modulus(shift))
        return self.ring.reduce(part, width)

    def __add__(self, other: "LocalValue") -> "LocalValue":
        if self.val is None:
            return other
        if other.val is None:
            return self
        ring = self.ring
        v = min(self.val, other.val)
        top = min(self.abs_prec, other.abs_prec)
        if top <= v:
            return LocalValue(ring, int(top), 0, ())
        width = int(top) - v
        s = _add_dense(self._stretched(self.val - v, width), other._stretched(other.val - v, width))
        t, u = ring.split(ring.reduce(s, width), width)
        if t == width or not u:
            return LocalValue(ring, int(top), 0, ())
        return LocalValue(ring, v + t, width - t, tuple(ring.reduce(u, width - t)))

    def __neg__(self) -> "LocalValue":
        return LocalValue(self.ring, self.val, self.rel, tuple(-c for c in self.unit))

    def __sub__(self, other: "LocalValue") -> "LocalValue":
        return self + (-other)

    def __mul__(self, other: "LocalValue") -> "LocalValue":
        if self.val is None or other.val is None:
            return LocalValue(self.ring, None, 0, ())
        rel = min(self.rel, other.rel)
        val = self.val + other.val
        if rel == 0:
            return LocalValue(self.ring, val, 0, ())
        unit = self.ring.mul(list(self.unit), list(other.unit), rel)
        return LocalValue(self.ring, val, rel, tuple(unit))

    def inverse(self) -> "LocalValue":
        if self.val is None:
            raise ZeroDivisionError("inverse of zero")
        if self.rel == 0:
            raise PrecisionLoss("cannot invert a value known only up to its valuation")
        unit = self.ring.inverse(list(self.unit), self.rel)
        return LocalValue(self.ring, -self.val, self.rel, tuple(unit))

    def residue(self, power: int) -> list:
        """Dense residue modulo Φ_n^power (requires val >= 0)."""
        if self.val is None:
            return []
        if self.val < 0:
            raise ValueError("value has a pole at Φ_n")
        if self.abs_prec < power:
            raise PrecisionLoss(f"known modulo Φ^{self.abs_prec}, need Φ^{power}")
        return self._stretched(self.val, power)

    def multiplicity(self, cap: int) -> int:
        if self.val is None:
            return cap
        if self.rel == 0 and self.val < cap:
            raise PrecisionLoss(f"valuation only known to be >= {self.val}")
        return min(self.val, cap)


@lru_cache(maxsize=64)
def local_ring(n: int) -> LocalRing:
    return LocalRing(n)
