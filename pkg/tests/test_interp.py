from __future__ import annotations

import math
from fractions import Fraction

import pytest

from skills.errors import HypothesisNotMet
from skills.exactnum import AlgebraicNumber
from skills.interp import (
    InterpolationSystem,
    build_m0,
    check_prop310,
    delta_h_value,
    f_polynomial,
    find_mu,
    g_polynomials,
    g_value,
    is_proportional,
    m0_height,
    m0_matrix,
    m0_orthogonal,
)
from skills.linalg import rank


def q(x) -> AlgebraicNumber:
    return AlgebraicNumber(Fraction(x))


def test_m0_small_shapes():
    assert build_m0(1, 2).matrix == [[1, 1]]
    assert m0_matrix(2, 2)[0] == [1, 0, 1, 0]
    assert build_m0(1, 2).cofactors == (-1, 1)


@pytest.mark.parametrize("K, L", [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_m0_has_rank_s_minus_one(K, L):
    assert rank(m0_matrix(K, L)) == K * L - 1


@pytest.mark.parametrize("K, L", [(1, 2), (2, 2), (2, 3), (3, 3), (2, 5)])
def test_dual_vector_is_proportional_to_cofactors(K, L):
    system = build_m0(K, L)
    assert is_proportional(m0_orthogonal(system), system.cofactors)
    assert is_proportional(m0_orthogonal(system, "convolution"), system.cofactors)
    dual = InterpolationSystem.from_dual(K, L)
    assert dual.source == "dual"
    assert is_proportional(dual.cofactors, system.cofactors)


def test_m0_height_small_cases():
    report = m0_height(build_m0(1, 2))
    assert report.sum_squares == 2 and report.gcd == 1
    assert float(report.height_upper) == pytest.approx(math.sqrt(2))
    single = m0_height(build_m0(1, 1))
    assert float(single.height_lower) == pytest.approx(1.0)


@pytest.mark.parametrize("K", [1, 2, 3])
@pytest.mark.parametrize("L", [2, 3, 4, 5])
def test_height_duality_and_cauchy_binet(K, L):
    report = m0_height(build_m0(K, L))
    assert report.duality_holds
    assert report.cauchy_binet_holds
    assert report.height_lower.value <= report.height_upper.value


def test_dual_height_report_has_no_minor_fields():
    report = m0_height(InterpolationSystem.from_dual(3, 3))
    assert report.duality_holds is None and report.cauchy_binet_holds is None
    assert report.ultrametric is None


@pytest.mark.parametrize("K", range(1, 6))
@pytest.mark.parametrize("L", range(2, 6))
def test_sup_height_within_bound(K, L):
    assert check_prop310(K, L).passed


def test_euclidean_height_can_exceed_bound():
    report = check_prop310(1, 2)
    assert report.passed
    assert report.sup_height == 1
    assert not report.euclidean_within_bound


def test_find_mu_basic():
    system = build_m0(1, 2)
    report = find_mu(system, q(3), q(1))
    assert report.mu == 0
    assert report.F == q(2)
    assert float(g_value(report, system)) == pytest.approx(2.0)


@pytest.mark.parametrize(
    "alpha, beta, L",
    [(q(0), q(1), 2), (q(3), q(0), 2), (q(3), q(1), 1)],
)
def test_find_mu_hypotheses(alpha, beta, L):
    with pytest.raises(HypothesisNotMet):
        find_mu(build_m0(1, L), alpha, beta)


@pytest.mark.parametrize("K, L", [(2, 2), (2, 3), (3, 2)])
def test_h_vanishes_to_order_s_minus_one_at_origin(K, L):
    system = build_m0(K, L)
    for mu in range(K * L - 1):
        assert delta_h_value(system, mu, q(1), q(0)).is_zero
    assert not delta_h_value(system, K * L - 1, q(1), q(0)).is_zero


def test_find_mu_stays_within_l_minus_one():
    system = build_m0(2, 3)
    report = find_mu(system, q(2), q(1))
    assert report.mu <= 2
    assert report.mu_exceeds_l_minus_2 == (report.mu == 2)
    assert not report.F.is_zero


def test_find_mu_can_reach_l_minus_one():
    # H = 2 + X - 2Y + XY, H(z, e^z) = z^3/6, and H(1, 3) = 0
    system = build_m0(2, 2)
    assert system.cofactors == (2, 1, -2, 1)
    assert delta_h_value(system, 0, q(3), q(1)).is_zero
    report = find_mu(system, q(3), q(1))
    assert report.mu == 1
    assert report.mu_exceeds_l_minus_2
    assert report.F == q(1)
    g1, g2 = g_polynomials(report, system)
    assert g1.is_integral() and g2.is_integral()
    assert float(g_value(report, system)) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "alpha, beta",
    [
        (q(3), q(1)),
        (q(Fraction(5, 2)), q(Fraction(1, 3))),
        (AlgebraicNumber(Fraction(1), Fraction(1), -1), AlgebraicNumber(Fraction(0), Fraction(1), -1)),
    ],
)
def test_g_polynomials_are_integral(alpha, beta):
    system = build_m0(3, 3)
    report = find_mu(system, alpha, beta)
    g1, g2 = g_polynomials(report, system)
    assert g1.is_integral() and g2.is_integral()
    assert f_polynomial(system, report.mu).is_integral()
    assert g2.evaluate(beta, alpha) * system.content == report.F
