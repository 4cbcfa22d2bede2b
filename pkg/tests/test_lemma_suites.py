from __future__ import annotations

import pytest

from skills.errors import InconsistencyError
from skills.lemma_suites import (
    SUITE_NAMES,
    SUITES,
    analytic_suite,
    asymptotics_suite,
    feldman_suite,
    hermite_pade_suite,
    interp_suite,
    numtheory_suite,
    run_suite,
    zerolemma_suite,
)


def _assert_passed(report):
    failed = [(c.name, c.detail) for c in report.checks if not c.passed]
    assert report.passed, failed
    assert report.checks


def test_numtheory_suite():
    _assert_passed(numtheory_suite(n_max=20))


def test_feldman_suite():
    _assert_passed(feldman_suite(coeff_sum_max=12, integrality_max=4, ell_range=4))


def test_hermite_pade_suite():
    _assert_passed(hermite_pade_suite(max_sigma=8, random_systems=10, lambda_max_K=4, binomial_max=4))


def test_interp_suite():
    report = interp_suite(duality_max_K=2, height_bound_max_K=3, max_L=4)
    _assert_passed(report)
    find_mu_check = next(c for c in report.checks if c.name == "find_mu")
    # (α, β) = (3, 1) at K = L = 2 needs μ = L-1
    assert "mu = L-1" in find_mu_check.detail


def test_zerolemma_suite():
    _assert_passed(zerolemma_suite(trials=100, seed=7, max_D1=3, max_M=3))


def test_analytic_suite():
    _assert_passed(analytic_suite())


def test_asymptotics_suite():
    _assert_passed(asymptotics_suite())


def test_run_suite_by_name():
    reports = run_suite("zerolemma", trials=50, seed=3)
    assert [r.name for r in reports] == ["zerolemma"]
    assert reports[0].checks[0].count == 50
    assert "all" in SUITE_NAMES


def test_run_suite_unknown_name():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_run_suite_reports_engine_errors_as_failed_checks(monkeypatch):
    def broken(**kwargs):
        raise InconsistencyError("G1 is not an integer polynomial")

    monkeypatch.setitem(SUITES, "feldman", broken)
    [report] = run_suite("feldman")
    assert not report.passed
    assert report.checks[0].name == "aborted"
    assert "InconsistencyError" in report.checks[0].detail
