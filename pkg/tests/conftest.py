from fractions import Fraction

import sympy
from hypothesis import strategies as st

from qcong.core_arith import QLaurent, QPoly, RatFun

Q = sympy.Symbol("q")

small_coef = st.one_of(
    st.integers(-6, 6),
    st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4)),
)


@st.composite
def qpolys(draw, max_deg=8, min_terms=0):
    terms = draw(st.dictionaries(st.integers(0, max_deg), small_coef, min_size=min_terms, max_size=6))
    return QPoly(terms)


@st.composite
def nonzero_qpolys(draw, max_deg=8):
    p = draw(qpolys(max_deg))
    return p if p else QPoly({draw(st.integers(0, max_deg)): draw(st.integers(1, 5))})


@st.composite
def qlaurents(draw):
    terms = draw(st.dictionaries(st.integers(-6, 6), small_coef, max_size=5))
    return QLaurent(terms)


@st.composite
def ratfuns(draw):
    return RatFun(draw(qpolys(5)), draw(nonzero_qpolys(4)))


def to_sympy(p) -> sympy.Expr:
    return sum((sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c))
               * Q ** e for e, c in p.terms.items()) if p.terms else sympy.Integer(0)


def from_sympy(expr) -> QPoly:
    poly = sympy.Poly(sympy.expand(expr), Q)
    return QPoly({m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())})
