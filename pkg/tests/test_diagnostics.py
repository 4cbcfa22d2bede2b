from __future__ import annotations

import math
from fractions import Fraction

import pytest

from skills.diagnostics import diagnose, liouville_lower
from skills.errors import HypothesisNotMet
from skills.exactnum import AlgebraicNumber


def test_diagnose_small_case():
    report = diagnose("3", "1", 2, 3, "2")
    assert report.mu <= 2
    assert report.mu_exceeds_l_minus_2 == (report.mu == 2)
    assert report.source == "minors"
    assert report.lower_holds
    assert not report.upper_hypothesis_holds
    assert set(report.lengths) == {"log_L_G1", "log_L_G1_bound", "log_L_G2", "log_L_G2_bound"}
    assert Fraction(report.lower) <= Fraction(report.log_g)


def test_minors_and_dual_agree():
    minors = diagnose("3", "1", 2, 3, "2", mode="minors")
    dual = diagnose("3", "1", 2, 3, "2", mode="dual")
    assert dual.source == "dual"
    for name in ("mu", "log_height", "log_g", "lower", "upper", "contradiction"):
        assert getattr(minors, name) == getattr(dual, name), name


def test_diagnose_rejects_zero_alpha():
    with pytest.raises(HypothesisNotMet):
        diagnose("0", "1", 2, 3, "2")
    with pytest.raises(ValueError):
        diagnose("3", "1", 2, 3, "1")


def test_liouville_lower():
    value = liouville_lower([AlgebraicNumber(Fraction(2, 3))], [1], 1)
    assert float(value) == pytest.approx(-math.log(3), abs=1e-12)
    with pytest.raises(ValueError):
        liouville_lower([AlgebraicNumber(Fraction(2))], [1], 0)
    with pytest.raises(ValueError):
        liouville_lower([AlgebraicNumber(Fraction(2))], [1, 2], 1)


def test_certificate_parameters_produce_contradiction(certificate_3_1):
    c = certificate_3_1
    report = diagnose(c.alpha, c.beta, c.K, c.L, c.E)
    assert report.contradiction
    assert Fraction(report.gap) > 0
    assert report.to_dict()["rounding"]["upper"] == "up"
