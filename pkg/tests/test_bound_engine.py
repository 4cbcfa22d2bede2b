from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from skills.bound_engine import (
    SNAP_BITS,
    TERM_NAMES,
    certify,
    resolve_log_heights,
    search_best,
    static_terms,
    lhs_value,
    theorem1_rhs,
    verify_certificate,
)
from skills.errors import BoundRejected, HypothesisNotMet, NoCertificateFound
from skills.exactnum import DECIMAL_DIGITS, AlgebraicNumber, format_decimal, precision_context, upper


def test_k_equal_one_terms_vanish():
    with precision_context(128):
        terms = static_terms(1, Fraction(1), Fraction(1), 1, 5)
        for name in ("K_lcm", "D_log_Dmn", "log_fact", "B_term"):
            assert upper(abs(terms[name])) == 0, name


def test_l_equal_two_feldman_term():
    with precision_context(128):
        terms = static_terms(1, Fraction(0), Fraction(0), 4, 2)
        assert float(upper(terms["L_feldman"])) == pytest.approx(math.log(4) + 1)


def test_rhs_matches_high_precision_oracle():
    D, K, L, E = 1, 3, 4, Fraction(5, 2)
    logA, logB = Fraction(1), Fraction(1, 2)
    rhs = theorem1_rhs("3", "1/2", D, logA, logB, K, L, E, precision=256)
    with mp.workprec(512):
        log = mpmath.log
        E_ = mpmath.mpf(5) / 2
        oracle = (
            D * K * L * log(2)
            + D * (K - 1) * (1 + log(3 * L) / 2 + log(math.lcm(1, 2, 3)))
            + D * log(math.factorial(2) // 2)
            + D * ((L - 1) * (log(4) + 1) + log(min(2 ** (K - 1), math.factorial(L - 2))))
            + log(math.factorial(K - 1))
            + (K - 1) * (mpmath.mpf(1) / 2 - log(2))
            + (L - 1) * (1 - log(2))
            + L * E_ * mpmath.mpf(1) / 2
            + L * log(E_)
        )
        assert rhs.value >= oracle - mpmath.mpf(2) ** -400
        assert rhs.value - oracle < mpmath.mpf(2) ** -200


def test_lhs_rounds_down():
    lhs = lhs_value(2, 3, "5/2", precision=256)
    with mp.workprec(512):
        assert lhs.value <= 6 * mpmath.log(mpmath.mpf(5) / 2)


def test_certify_reproduces_search_result(certificate_3_1):
    c = certificate_3_1
    again = certify("3", "1", c.K, c.L, c.E, precision=256)
    assert again.to_dict() == c.to_dict()
    assert set(c.terms) == set(TERM_NAMES)
    assert c.D == 1 and c.K >= 2 and c.L >= 2


def test_certify_zero_alpha(certificate_3_1):
    c = certificate_3_1
    cert = certify("0", "1", c.K, c.L, c.E, precision=256)
    assert cert.alpha == "0"
    assert cert.lhs == c.lhs


def test_certify_rejects_with_breakdown():
    with pytest.raises(BoundRejected) as info:
        certify("3", "1", 1, 2, Fraction(1000001, 1000000))
    assert "margin" in info.value.terms
    assert info.value.terms["margin"].startswith("-")


def test_search_caps_and_hypotheses():
    with pytest.raises(NoCertificateFound):
        search_best("3", "1", max_K=3, max_L=3)
    with pytest.raises(ValueError):
        search_best("3", "1", max_K=0, max_L=3)
    with pytest.raises(HypothesisNotMet):
        search_best("3", "0")
    with pytest.raises(HypothesisNotMet):
        certify("3", "0", 10, 3, 2)
    with pytest.raises(ValueError):
        certify("3", "1", 10, 1, 2)


def test_search_keeps_e_on_the_snap_grid(certificate_3_1):
    E = Fraction(certificate_3_1.E)
    assert (2**SNAP_BITS) % E.denominator == 0
    assert E > 1


def test_resolve_log_heights_rejects_small_log_a():
    half, one = AlgebraicNumber(Fraction(1, 2)), AlgebraicNumber(Fraction(1))
    with precision_context(128):
        logA, logB = resolve_log_heights(half, one, 1)
        assert float(logA) == pytest.approx(math.log(2), abs=1e-9)
        assert logB == 0
        with pytest.raises(HypothesisNotMet):
            resolve_log_heights(half, one, 1, logA="0")


def test_verify_at_stored_and_higher_precision(certificate_3_1):
    assert verify_certificate(certificate_3_1).passed
    assert verify_certificate(certificate_3_1, 512).passed


def _failed(cert):
    report = verify_certificate(cert)
    assert not report.passed
    return {c.name for c in report.checks if not c.passed}


def _nudge(text, steps):
    # move a stored decimal by a few units in its last place
    return format_decimal(Fraction(text) + Fraction(steps, 10**DECIMAL_DIGITS), "nearest")


def test_verify_flags_overstated_lhs(certificate_3_1):
    assert "lhs_reproduced" in _failed(dataclasses.replace(certificate_3_1, lhs="100000"))


@pytest.mark.parametrize("steps", [-1, 1])
def test_verify_flags_lhs_moved_by_one_unit(certificate_3_1, steps):
    tampered = dataclasses.replace(certificate_3_1, lhs=_nudge(certificate_3_1.lhs, steps))
    assert "lhs_reproduced" in _failed(tampered)


def test_verify_flags_rhs_raised_to_lhs(certificate_3_1):
    assert "rhs_reproduced" in _failed(dataclasses.replace(certificate_3_1, rhs=certificate_3_1.lhs))


@pytest.mark.parametrize("steps", [-1, 1])
def test_verify_flags_moved_conclusion(certificate_3_1, steps):
    tampered = dataclasses.replace(
        certificate_3_1, log_eps_lower=_nudge(certificate_3_1.log_eps_lower, steps)
    )
    assert "conclusion_reproduced" in _failed(tampered)


def test_verify_flags_edited_term(certificate_3_1):
    terms = dict(certificate_3_1.terms, A_term="0")
    assert "terms_reproduced" in _failed(dataclasses.replace(certificate_3_1, terms=terms))


def test_conclusion_and_height_terms_keep_their_sign(certificate_3_1):
    c = certificate_3_1
    assert Fraction(c.log_eps_lower) < 0
    assert Fraction(c.log_eps_lower) <= -Fraction(c.lhs)
    # 𝒜 = 1 for alpha = 3, so the A term is -(L-1) log 2
    assert Fraction(c.logA) < Fraction(1, 10**30)
    assert float(c.terms["A_term"]) == pytest.approx(-(c.L - 1) * math.log(2), abs=1e-12)
    assert c.terms["A_term"].startswith("-")


def test_verify_flags_bad_shape(certificate_3_1):
    report = verify_certificate(dataclasses.replace(certificate_3_1, L=1))
    assert not report.passed
    assert [c.name for c in report.checks] == ["shape"]


def test_certified_bound_holds_at_four_times_precision(certificate_3_1):
    with mp.workprec(4 * certificate_3_1.precision_bits):
        log_eps = mpmath.log(3 - mpmath.e)
        assert log_eps >= mpmath.mpf(certificate_3_1.log_eps_lower)
