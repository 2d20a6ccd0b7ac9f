"""Exact q-series arithmetic and a verifier for q-supercongruences modulo
powers of cyclotomic polynomials."""

from .core_arith import QLaurent, QPoly, RatFun, poly_gcd, poly_divrem
from .errors import QCongError
from .qalg import cyclotomic, q_binomial, q_int, q_pochhammer
from .qsums import SumCase, SumFamily, partial_sum
from .verifier import CheckCase, CheckId, CheckReport, CongruenceResult, congruent_mod_cyclotomic

__version__ = "0.1.0"

__all__ = [
    "QLaurent", "QPoly", "RatFun", "poly_gcd", "poly_divrem", "QCongError",
    "cyclotomic", "q_binomial", "q_int", "q_pochhammer", "SumCase", "SumFamily",
    "partial_sum", "CheckCase", "CheckId", "CheckReport", "CongruenceResult",
    "congruent_mod_cyclotomic",
]
