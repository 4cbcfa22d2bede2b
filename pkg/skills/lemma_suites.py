"""
各個 lemma / 恆等式的可執行檢查，依模組分成 suites。

每個 suite 回傳 SuiteReport，裡面是一串 CheckResult(name, passed, count, detail)；
CLI 與 API 的 `lemmas` 只是呼叫 run_suite。
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import mpmath
import numpy as np
from mpmath import iv

from .analytic import (
    AnalyticParams,
    circle_sup,
    det_upper_bound,
    envelope_check,
    numeric_det,
    phi_mu_at,
    phi_mu_at_zero,
    schwarz_bound,
)
from .asymptotics import (
    closed_form_solution,
    effective_exponent,
    numeric_optimize,
    parameters_for,
    stirling_gamma_bracket,
)
from .errors import ExpBoundError
from .exactnum import AlgebraicNumber, interval_contains, precision_context, workprec
from .feldman import derivative_at_integer, feldman, weighted_coeff_sum
from .hermite_pade import (
    check_lambda_size,
    check_binomial_product,
    compositions,
    generalized_vandermonde,
    hp_coefficients,
    remainder_order,
)
from .interp import build_m0, check_prop310, find_mu, m0_entry, m0_height
from .numtheory import check_binomial_bounds, dmn, lcm_upto, prime_table, psi_interval, stirling_row
from .reports import CheckResult, SuiteReport
from .zerolemma import check_optimality, random_trials

logger = logging.getLogger("LemmaSuites")

DEFAULT_SEED = 20240229


# ========= numtheory ========= #

def _falling_factorial(nu: int) -> List[int]:
    """z(z−1)…(z−ν+1) 的整數係數（常數項在前）。"""
    poly = [1]
    for i in range(nu):
        shifted = [0] + poly
        for j, c in enumerate(poly):
            shifted[j] -= i * c
        poly = shifted
    return poly


def numtheory_suite(n_max: int = 64) -> SuiteReport:
    report = SuiteReport("numtheory")

    binomial = check_binomial_bounds(n_max)
    report.add(CheckResult("binomial_bounds", binomial.passed, binomial.checked, "; ".join(binomial.violations[:3])))

    table = prime_table(200)
    ok, bad = True, ""
    for n in range(1, 201):
        # n = p^k 時 d_n = p·d_{n−1}
        bases = [p for p in table.upto(n) if _strip(n, p) == 1]
        expected = lcm_upto(n - 1) * (bases[0] if bases else 1)
        if lcm_upto(n) != expected:
            ok, bad = False, f"d_n recurrence fails at n={n}"
            break
    report.add(CheckResult("lcm_recurrence", ok, 200, bad))

    ok, bad = True, ""
    with precision_context(128):
        for n in range(0, 201):
            lcm = lcm_upto(n)
            if not interval_contains(iv.exp(psi_interval(n)), lcm):
                ok, bad = False, f"exp(psi({n})) does not contain d_{n}"
                break
    report.add(CheckResult("psi_equals_log_lcm", ok, 201, bad))

    ok, checked = True, 0
    for m in range(0, 61):
        for n in range(0, 61):
            removed = math.prod(q ** table.factorial_valuation(m, q) for q in table.upto(n))
            checked += 1
            if dmn(m, n) * removed != math.factorial(m):
                ok = False
                break
        if not ok:
            break
    report.add(CheckResult("dmn_identity", ok, checked, "" if ok else f"m={m}, n={n}"))

    ok, nu = True, 0
    for nu in range(0, 26):
        if list(stirling_row(nu)) != _falling_factorial(nu):
            ok = False
            break
    report.add(CheckResult("stirling_falling_factorial", ok, 26, "" if ok else f"nu={nu}"))
    return report


def _strip(n: int, p: int) -> int:
    """n 除掉所有 p 因子後剩下的部分。"""
    while n % p == 0:
        n //= p
    return n


# ========= feldman ========= #

def feldman_suite(coeff_sum_max: int = 40, integrality_max: int = 10, ell_range: int = 12) -> SuiteReport:
    report = SuiteReport("feldman")

    failures = [nu for nu in range(coeff_sum_max + 1) if weighted_coeff_sum(nu) > 2**nu]
    report.add(CheckResult("weighted_coeff_sum", not failures, coeff_sum_max + 1, f"fails at nu={failures[:5]}" if failures else ""))

    checked, bad = 0, ""
    for nu in range(integrality_max + 1):
        d = lcm_upto(nu)
        for k in range(integrality_max + 1):
            for u in range(k + 1):
                for ell in range(-ell_range, ell_range + 1):
                    value = d**k * derivative_at_integer(nu, u, ell)
                    checked += 1
                    if value.denominator != 1:
                        bad = f"nu={nu}, u={u}, k={k}, l={ell}"
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    report.add(CheckResult("derivative_integrality", not bad, checked, bad))

    bad = ""
    for nu in range(21):
        poly = feldman(nu)
        for ell in range(0, 31):
            if poly(ell) != math.comb(ell, nu):
                bad = f"F_{nu}({ell}) != C({ell}, {nu})"
                break
        if bad:
            break
    report.add(CheckResult("binomial_values", not bad, 21 * 31, bad))
    return report


# ========= hermite_pade ========= #

def _grid_systems(max_sigma: int) -> Iterator[Tuple[List[int], List[int]]]:
    for sigma in range(2, max_sigma + 1):
        for parts in range(2, sigma + 1):
            for gamma in compositions(sigma - parts, parts):
                yield list(range(parts)), [g + 1 for g in gamma]


def _random_nodes(rng: np.random.Generator, count: int) -> List[Fraction]:
    nodes: List[Fraction] = []
    while len(nodes) < count:
        x = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
        if x not in nodes:
            nodes.append(x)
    return nodes


def _random_params(rng: np.random.Generator, max_sigma: int) -> List[int]:
    m = int(rng.integers(2, 5))
    params = [int(rng.integers(1, 4)) for _ in range(m)]
    while sum(params) > max_sigma:
        params.pop()
    return params if len(params) >= 2 else [1, 1]


def hermite_pade_suite(
    max_sigma: int = 14,
    random_systems: int = 50,
    seed: int = DEFAULT_SEED,
    lambda_max_K: int = 8,
    binomial_max: int = 6,
) -> SuiteReport:
    report = SuiteReport("hermite_pade")
    rng = np.random.default_rng(seed)

    checked, bad = 0, ""
    for nodes, params in _grid_systems(max_sigma):
        system = hp_coefficients(nodes, params, method="convolution")
        checked += 1
        if remainder_order(system, system.sigma - 1) < system.sigma - 1:
            bad = f"order < sigma-1 for nodes 0..{len(nodes) - 1}, params={params}"
            break
    report.add(CheckResult("order_integer_nodes", not bad, checked, bad))

    bad = ""
    for _ in range(random_systems):
        params = _random_params(rng, max_sigma)
        nodes = _random_nodes(rng, len(params))
        by_lambda = hp_coefficients(nodes, params, method="lambda")
        if by_lambda.coefficients != hp_coefficients(nodes, params, method="convolution").coefficients:
            bad = f"lambda and convolution disagree at nodes={nodes}, params={params}"
            break
        if remainder_order(by_lambda, by_lambda.sigma - 1) < by_lambda.sigma - 1:
            bad = f"order < sigma-1 for nodes={nodes}, params={params}"
            break
    report.add(CheckResult("order_rational_nodes", not bad, random_systems, bad))

    bad = ""
    for _ in range(random_systems):
        params = _random_params(rng, 12)
        nodes = _random_nodes(rng, len(params))
        try:
            generalized_vandermonde(nodes, params)
        except ExpBoundError as e:
            bad = str(e)
            break
    report.add(CheckResult("generalized_vandermonde", not bad, random_systems, bad))

    for name, results in (
        ("lambda_size", [check_lambda_size(K, L) for K in range(1, lambda_max_K + 1) for L in range(2, 9)]),
        ("binomial_product", [check_binomial_product(K, L) for K in range(1, binomial_max + 1) for L in range(2, binomial_max + 1)]),
    ):
        failed = [r for r in results if not r.passed]
        report.add(
            CheckResult(name, not failed, sum(r.count for r in results), failed[0].detail if failed else "")
        )
    return report


# ========= interp ========= #

def _sample_pairs() -> List[Tuple[AlgebraicNumber, AlgebraicNumber]]:
    q = AlgebraicNumber.rational
    gauss = lambda a, b: AlgebraicNumber(Fraction(a), Fraction(b), -1)  # noqa: E731
    return [
        (q(3), q(1)),
        (q(2), q(1)),
        (q(1), q(1)),
        (q(-1), q(1)),
        (q(Fraction(1, 2)), q(2)),
        (q(7), q(2)),
        (q(5), q(-1)),
        (q(Fraction(3, 2)), q(Fraction(1, 3))),
        (q(10), q(3)),
        (q(-4), q(Fraction(-5, 2))),
        (gauss(1, 1), gauss(0, 1)),
        (gauss(0, 1), gauss(1, 0)),
        (gauss(2, -1), gauss(1, 1)),
        (gauss(3, 0), gauss(0, 2)),
        (gauss(Fraction(1, 2), 1), gauss(-1, 1)),
        (gauss(-2, 3), gauss(0, -1)),
        (gauss(1, 0), gauss(2, 1)),
        (gauss(5, 5), gauss(1, -1)),
        (AlgebraicNumber(Fraction(1), Fraction(1), -2), AlgebraicNumber(Fraction(0), Fraction(1), -2)),
        (AlgebraicNumber(Fraction(2), Fraction(1), -3), q(1)),
    ]


def interp_suite(duality_max_K: int = 4, height_bound_max_K: int = 5, max_L: int = 5) -> SuiteReport:
    report = SuiteReport("interp")

    checked, duality_bad, binet_bad = 0, "", ""
    for K in range(1, duality_max_K + 1):
        for L in range(2, max_L + 1):
            h = m0_height(build_m0(K, L))
            checked += 1
            if not h.duality_holds and not duality_bad:
                duality_bad = f"K={K}, L={L}"
            if not h.cauchy_binet_holds and not binet_bad:
                binet_bad = f"K={K}, L={L}"
    report.add(CheckResult("height_duality", not duality_bad, checked, duality_bad))
    report.add(CheckResult("cauchy_binet", not binet_bad, checked, binet_bad))

    checked, bad, euclid_over = 0, "", []
    for K in range(1, height_bound_max_K + 1):
        for L in range(2, max_L + 1):
            result = check_prop310(K, L)
            checked += 1
            if not result.passed and not bad:
                bad = f"K={K}, L={L}: sup height {result.sup_height} > {result.bound}"
            if not result.euclidean_within_bound:
                euclid_over.append((K, L))
    detail = bad or (f"euclidean height above the bound at {euclid_over}" if euclid_over else "")
    report.add(CheckResult("m0_height_bound", not bad, checked, detail))

    checked, bad, at_limit = 0, "", []
    systems = {(K, L): build_m0(K, L) for K in range(1, 5) for L in range(2, max_L + 1)}
    for alpha, beta in _sample_pairs():
        for (K, L), system in systems.items():
            evaluation = find_mu(system, alpha, beta)
            checked += 1
            if evaluation.mu > L - 1 or evaluation.F.is_zero:
                bad = f"alpha={alpha}, beta={beta}, K={K}, L={L}, mu={evaluation.mu}"
                break
            if evaluation.mu_exceeds_l_minus_2:
                at_limit.append((str(alpha), str(beta), K, L))
        if bad:
            break
    detail = bad or (f"mu = L-1 at {at_limit[:5]} ({len(at_limit)} cases)" if at_limit else "")
    report.add(CheckResult("find_mu", not bad, checked, detail))
    return report


# ========= zerolemma ========= #

def zerolemma_suite(trials: int = 1000, seed: int = DEFAULT_SEED, max_D1: int = 6, max_M: int = 6) -> SuiteReport:
    report = SuiteReport("zerolemma")
    report.add(random_trials(trials=trials, seed=seed))
    report.add(check_optimality(max_D1, max_M))
    return report


# ========= analytic ========= #

# (α, β, K, L, E)：α 是 e^β 的十進位近似，使 ε < E^{−KL}
DETERMINANT_CASES: Tuple[Tuple[str, str, int, int, int], ...] = (
    ("2.718282", "1", 2, 2, 8),
    ("1.648721", "1/2", 2, 3, 8),
    ("7.389056", "2", 3, 2, 8),
    ("2.718282", "1", 3, 3, 4),
    ("0.540302+0.841471i", "i", 2, 2, 8),
)


def _case_numbers(alpha: str, beta: str) -> Tuple[AlgebraicNumber, AlgebraicNumber]:
    def parse(text: str) -> AlgebraicNumber:
        if text == "i":
            return AlgebraicNumber(Fraction(0), Fraction(1), -1)
        if text.endswith("i"):
            re_part, im_part = text[:-1].split("+")
            return AlgebraicNumber(Fraction(re_part), Fraction(im_part), -1)
        return AlgebraicNumber(Fraction(text))

    return parse(alpha), parse(beta)


def analytic_suite(precision: int = 256, seed: int = DEFAULT_SEED) -> SuiteReport:
    report = SuiteReport("analytic")

    checked, bad = 0, ""
    with workprec(128):
        for k in range(6):
            for ell in range(5):
                for s in range(10):
                    exact = phi_mu_at_zero(k, ell, s)
                    checked += 1
                    if exact != m0_entry(s, k, ell) or abs(phi_mu_at(k, ell, s, 0, 128) - exact) > 0:
                        bad = f"k={k}, l={ell}, s={s}"
                        break
                if bad:
                    break
            if bad:
                break
    report.add(CheckResult("phi_at_zero", not bad, checked, bad))

    # ψ(z) = z^T·q(z)，q 係數非負：|ψ| 在圓周上的最大值落在正實軸（取樣點 θ = 0）
    rng = np.random.default_rng(seed)
    bad = ""
    trials = 20
    for _ in range(trials):
        T = int(rng.integers(0, 8))
        coeffs = [0] * T + [int(c) for c in rng.integers(0, 10, size=int(rng.integers(1, 6)))]
        coeffs[-1] += 1
        R = float(rng.uniform(1.5, 4.0))
        r = float(rng.uniform(0.1, R))
        bound = schwarz_bound(T, Fraction(r), Fraction(R), Fraction(circle_sup(coeffs, R)) * (1 + Fraction(1, 10**9)))
        if circle_sup(coeffs, r) > float(bound) * (1 + 1e-12):
            bad = f"T={T}, r={r}, R={R}"
            break
    report.add(CheckResult("schwarz_sampling", not bad, trials, bad))

    det_bad, bound_bad, envelope_bad = "", "", ""
    for alpha_text, beta_text, K, L, E in DETERMINANT_CASES:
        alpha, beta = _case_numbers(alpha_text, beta_text)
        system = build_m0(K, L)
        evaluation = find_mu(system, alpha, beta)
        params = AnalyticParams(K, L, evaluation.mu, Fraction(E), alpha, beta, precision)
        tag = f"alpha={alpha_text}, beta={beta_text}, K={K}, L={L}, E={E}"
        with workprec(precision):
            value = numeric_det(params, system)
            exact = evaluation.F.to_mpc(precision)
            if abs(value - exact) > abs(exact) * mpmath.mpf(2) ** -100 and not det_bad:
                det_bad = tag
            if params.hypothesis_holds():
                bound = det_upper_bound(params, system)
                if mpmath.log(abs(value)) > bound.value and not bound_bad:
                    bound_bad = tag
            elif not bound_bad:
                bound_bad = f"{tag}: eps < E^(-KL) does not hold"
        if not envelope_check(params).passed and not envelope_bad:
            envelope_bad = tag
    n = len(DETERMINANT_CASES)
    report.add(CheckResult("numeric_det_matches_F", not det_bad, n, det_bad))
    report.add(CheckResult("det_upper_bound", not bound_bad, n, bound_bad))
    report.add(CheckResult("envelope", not envelope_bad, n, envelope_bad))
    return report


# ========= asymptotics ========= #

def asymptotics_suite(precision: int = 128) -> SuiteReport:
    report = SuiteReport("asymptotics")
    closed = closed_form_solution(precision)
    numeric = numeric_optimize(precision=precision)

    with workprec(precision):
        e_ok = abs(closed.E.value - mpmath.mpf("25.0059")) < mpmath.mpf("1e-3")
        c_ok = abs(closed.objective.value - mpmath.mpf("276.55")) < mpmath.mpf("1e-2")
        rel = abs(numeric.objective.value - closed.objective.value) / closed.objective.value
        rel_e = abs(numeric.E.value - closed.E.value) / closed.E.value
    report.add(CheckResult("closed_form_constants", e_ok and c_ok, 2, f"E={closed.E}, objective={closed.objective}"))
    report.add(
        CheckResult(
            "numeric_matches_closed_form",
            rel < 1e-6 and rel_e < 1e-6,
            2,
            f"relative gaps {mpmath.nstr(rel, 3)}, {mpmath.nstr(rel_e, 3)}",
        )
    )

    bad = ""
    for beta_abs in (10**3, 10**6, 10**9, 10**12):
        K, L = parameters_for(beta_abs, closed)
        exponent = effective_exponent(beta_abs, K, L, closed.E.value, precision)
        with workprec(precision):
            b = mpmath.mpf(beta_abs)
            ratio = exponent.value / closed.objective.value
            floor = (1 - 1 / (closed.c1.value * b)) * (1 - 1 / (closed.c2.value * mpmath.log(b)))
            if not floor - mpmath.mpf(2) ** (20 - precision) <= ratio <= 1:
                bad = f"|beta|={beta_abs}: ratio {mpmath.nstr(ratio, 10)} outside [{mpmath.nstr(floor, 10)}, 1]"
                break
    report.add(CheckResult("effective_exponent", not bad, 4, bad))

    bad, checked = "", 0
    points = [Fraction(n) for n in range(2, 41)] + [Fraction(5, 2), Fraction(7, 3), Fraction(101, 10)]
    for x in points:
        lo, hi = stirling_gamma_bracket(x, precision)
        with workprec(precision + 32):
            gamma = mpmath.gamma(mpmath.mpf(x.numerator) / x.denominator)
        checked += 1
        if not lo.value <= gamma <= hi.value:
            bad = f"Gamma({x}) outside [{lo}, {hi}]"
            break
    report.add(CheckResult("gamma_bracket", not bad, checked, bad))
    return report


# ========= runner ========= #

SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "numtheory": numtheory_suite,
    "feldman": feldman_suite,
    "hermite_pade": hermite_pade_suite,
    "interp": interp_suite,
    "zerolemma": zerolemma_suite,
    "analytic": analytic_suite,
    "asymptotics": asymptotics_suite,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, trials: Optional[int] = None, seed: Optional[int] = None) -> List[SuiteReport]:
    """
    name 為 SUITE_NAMES 之一；trials / seed 只影響 zerolemma（seed 也影響隨機 HP 系統）。
    """
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if name == "all" else [name]
    reports: List[SuiteReport] = []
    for suite in names:
        kwargs: Dict[str, int] = {}
        if seed is not None and suite in ("zerolemma", "hermite_pade", "analytic"):
            kwargs["seed"] = seed
        if trials is not None and suite == "zerolemma":
            kwargs["trials"] = trials
        try:
            result = SUITES[suite](**kwargs)
        except ExpBoundError as e:
            logger.error(f"suite {suite} aborted: {type(e).__name__}: {e}")
            result = SuiteReport(suite)
            result.add(CheckResult("aborted", False, 0, f"{type(e).__name__}: {e}"))
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, f"suite {suite}: {'pass' if result.passed else 'FAIL'} ({len(result.checks)} checks)")
        reports.append(result)
    return reports


__all__ = [
    "DEFAULT_SEED",
    "DETERMINANT_CASES",
    "numtheory_suite",
    "feldman_suite",
    "hermite_pade_suite",
    "interp_suite",
    "zerolemma_suite",
    "analytic_suite",
    "asymptotics_suite",
    "SUITES",
    "SUITE_NAMES",
    "run_suite",
]
