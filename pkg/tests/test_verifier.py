import pytest
from hypothesis import given, settings, strategies as st

from conftest import ratfuns
from qcong.core_arith import QPoly, RatFun
from qcong.errors import DenominatorNotCoprime, InvalidParams
from qcong.numthy import jacobi
from qcong.qalg import cyclotomic
from qcong.qsums import SumCase, SumFamily, partial_sum
from qcong.verifier import (CheckId, check_fact_ident, check_limit_bridge, check_numeric,
                            check_prior_qanalogues, check_s2_lemma, check_thm1, check_thm2,
                            check_thm3, check_whipple_special, congruent_mod_cyclotomic,
                            conjecture_quotient, residue_digest, thm2_divisor)
from fractions import Fraction


def test_congruence_examples():
    x = partial_sum(SumCase(SumFamily.EQ15, 1))
    for strategy in ("exact", "quotient", "both"):
        res = congruent_mod_cyclotomic(x, RatFun(-1), 3, 2, strategy)
        assert res.holds and res.denominator_coprime and res.multiplicity_found >= 2
        same = congruent_mod_cyclotomic(x, x, 3, 2, strategy)
        assert same.holds and same.multiplicity_found == 4
        with pytest.raises(DenominatorNotCoprime):
            congruent_mod_cyclotomic(RatFun(1, cyclotomic(3)), RatFun(0), 3, 2, strategy)
    with pytest.raises(InvalidParams):
        congruent_mod_cyclotomic(x, x, 1, 2)


def test_congruence_semantics_exact_power():
    phi = cyclotomic(5)
    x = RatFun(phi ** 3 * QPoly([2, 1]), QPoly([1, 0, 1]))
    for strategy in ("exact", "quotient"):
        res = congruent_mod_cyclotomic(x, RatFun(0), 5, 2, strategy)
        assert res.multiplicity_found == 3 and res.holds
        res = congruent_mod_cyclotomic(x, RatFun(0), 5, 4, strategy)
        assert res.multiplicity_found == 3 and not res.holds
        assert res.residue_digest != "[]"


def test_residue_digest_format():
    assert residue_digest([1, 0, Fraction(-3, 2), 0]) == "[1,0,-3/2]"
    assert residue_digest([]) == "[]"


coprime_ratfuns = ratfuns().filter(lambda r: r.den % cyclotomic(3) and r.den % cyclotomic(3) != QPoly())


@pytest.mark.property
@settings(max_examples=150, deadline=None)
@given(coprime_ratfuns, coprime_ratfuns, coprime_ratfuns, st.integers(1, 2))
def test_congruence_is_equivalence(x, y, z, power):
    phi_pow = RatFun(cyclotomic(3) ** power)
    y = x + phi_pow * y  # congruent to x by construction
    z = y + phi_pow * z
    for strategy in ("exact", "quotient"):
        assert congruent_mod_cyclotomic(x, x, 3, power, strategy).holds
        assert congruent_mod_cyclotomic(x, y, 3, power, strategy).holds
        assert congruent_mod_cyclotomic(y, x, 3, power, strategy).holds
        assert congruent_mod_cyclotomic(x, z, 3, power, strategy).holds


@pytest.mark.property
@settings(max_examples=150, deadline=None)
@given(coprime_ratfuns, coprime_ratfuns)
def test_strategies_agree_on_random_inputs(x, y):
    a = congruent_mod_cyclotomic(x, y, 3, 2, "exact")
    b = congruent_mod_cyclotomic(x, y, 3, 2, "quotient")
    assert a.verdict() == b.verdict()


@pytest.mark.parametrize("n,rhs", [(3, -1), (7, 1), (15, 1)])
def test_thm1_examples(n, rhs):
    report = check_thm1(n, "both")
    assert report.status == "pass" and report.strategy_agreement
    assert jacobi(2, n) == rhs


def test_thm2_examples():
    for n in (3, 5, 7):
        r = check_thm2(1, n, "both")
        assert r.status == "pass" and r.strategy_agreement
        assert r.multiplicity == check_thm1(n, "exact").multiplicity
    assert thm2_divisor(1, 5).to_ratfun() == RatFun(1)
    for m, n in ((3, 3), (3, 5)):
        r = check_thm2(m, n, "both")
        assert r.status == "pass" and r.strategy_agreement and r.denominator_coprime


def test_thm3_examples():
    r = check_thm3(1, 3, "roots")
    assert r.status == "pass" and "3:-1" in r.residue_digest
    r = check_thm3(3, 3, "roots")
    assert r.status == "pass" and "-9:1" in r.residue_digest
    for m in (1, 3):
        for n in (3, 5, 7):
            r = check_thm3(m, n, "both")
            assert r.status == "pass" and r.strategy_agreement


def test_prior_qanalogues():
    assert check_prior_qanalogues(3, "EQ14").status == "pass"
    r = check_prior_qanalogues(5, "EQ13")
    assert r.status == "pass" and "-1*q^2" in r.notes[0]
    assert check_prior_qanalogues(9, "EQ42").status == "skipped"


def test_whipple_values():
    for n, value in ((3, -1), (5, -1), (7, 1)):
        r = check_whipple_special(n)
        assert r.status == "pass" and r.residue_digest.startswith(f"value={value};")


def test_s2_lemma_examples():
    for n in (3, 5):
        r = check_s2_lemma(n)
        assert r.status == "pass" and r.strategy_agreement


def test_numeric_examples():
    r = check_numeric(CheckId.NUM_MODP2, 3, 1)
    assert r.status == "pass" and r.residue_digest == "lhs=8;rhs=8;mod=9"
    r = check_numeric(CheckId.NUM_MODP3, 5)
    assert r.status == "pass" and r.residue_digest == "lhs=99;rhs=99;mod=125"
    r = check_numeric(CheckId.NUM_CONJ_8, 3, 3)
    assert r.status == "pass"
    q = conjecture_quotient(8, 3, 3)
    assert (q.numerator % 9 == 0) and q.denominator % 3
    with pytest.raises(InvalidParams):
        check_numeric(CheckId.NUM_MODP3, 9)


def test_limit_bridge_examples():
    for n, value in ((3, "5/4"), (5, "43/32"), (7, "177/128")):
        r = check_limit_bridge(n)
        assert r.status == "pass" and r.residue_digest.startswith(f"limit={value};")


def test_fact_ident():
    for n in (3, 5, 9, 15):
        assert check_fact_ident(n).status == "pass"


def test_invalid_params():
    with pytest.raises(InvalidParams):
        check_thm1(4)
    with pytest.raises(InvalidParams):
        check_thm2(2, 3)
    with pytest.raises(InvalidParams):
        check_thm3(3, 1)
