"""
主不等式 KL·log E ≥ rhs 的 certified 版本：

    KL·log E ≥ DKL·log 2 + D(K−1)·log(e√(3L)·d_{L−1}) + D·log D_{K−1,L−1}
              + D·log((4e)^{L−1}·min(d_{L−2}^{K−1}, (L−2)!)) + log((K−1)!)
              + (K−1)·log(ℬ/2) + (L−1)·log(𝒜/2) + LE|β| + L·log E
    ⟹ |e^β − α| ≥ E^{−KL}

左邊一律取區間下端、右邊取上端。E 只接受有理數，證書裡的每個數字
都能被 verify_certificate 從頭重算。
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple, Union

import mpmath
from mpmath import iv

from storage.models import BoundCertificate

from . import __version__
from .analytic import epsilon_interval
from .errors import (
    BoundRejected,
    HypothesisNotMet,
    InconsistencyError,
    NoCertificateFound,
)
from .exactnum import (
    DEFAULT_PRECISION,
    AlgebraicNumber,
    RealDR,
    field_degree_ratio,
    as_algebraic,
    format_decimal,
    height_interval,
    interval_decimal,
    iv_max,
    log_max1_abs_interval,
    lower,
    mpf_to_fraction,
    parse_algebraic,
    parse_decimal,
    parse_rational,
    precision_context,
    to_interval,
    upper,
)
from .numtheory import dmn, lcm_upto
from .settings import MIN_PRECISION
from .reports import CheckResult, SuiteReport

logger = logging.getLogger("BoundEngine")

SNAP_BITS = 20
NUDGES = 4
BISECTION_STEPS = 80

TERM_NAMES = (
    "DKL_log2",
    "K_lcm",
    "D_log_Dmn",
    "L_feldman",
    "log_fact",
    "B_term",
    "A_term",
    "LE_beta",
    "L_logE",
)

Number = Union[AlgebraicNumber, str]


# ========= 小工具 ========= #

def _check_shape(K: int, L: int, E: Fraction) -> None:
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if L < 2:
        raise ValueError(f"L must be >= 2, got {L}")
    if E <= 1:
        raise ValueError(f"E must exceed 1, got {E}")


# ========= 𝒜, ℬ ========= #

def admissible_log_height(x: AlgebraicNumber, D: int) -> Any:
    """max(0, D·h(x) − log max(1,|x|))（目前精度的 iv）。"""
    if x.is_zero:
        return iv.mpf(0)
    return iv_max(0, D * height_interval(x) - log_max1_abs_interval(x))


def resolve_log_heights(
    alpha: AlgebraicNumber,
    beta: AlgebraicNumber,
    D: int,
    logA: Optional[Fraction | str] = None,
    logB: Optional[Fraction | str] = None,
) -> Tuple[Fraction, Fraction]:
    """
    log𝒜、logℬ 以十進位字串（向上）固定下來；使用者給的值必須不小於可接受的最小值。
    """
    out = []
    for name, x, given in (("logA", alpha, logA), ("logB", beta, logB)):
        adm = admissible_log_height(x, D)
        if given is None:
            out.append(parse_decimal(interval_decimal(adm, "up")))
            continue
        value = parse_rational(given) if isinstance(given, str) else Fraction(given)
        if value < mpf_to_fraction(upper(adm)):
            raise HypothesisNotMet(f"{name}={value} is below the admissible value {interval_decimal(adm, 'up')}")
        # 跟證書裡的十進位字串一致，verify 才能逐字重算
        out.append(parse_decimal(format_decimal(value, "up")))
    return out[0], out[1]


# ========= 主不等式 ========= #

def static_terms(D: int, logA: Any, logB: Any, K: int, L: int) -> Dict[str, Any]:
    """不含 E 的各項。"""
    log2 = iv.log(iv.mpf(2))
    feldman_min = min(lcm_upto(L - 2) ** (K - 1), math.factorial(L - 2))
    return {
        "DKL_log2": D * K * L * log2,
        "K_lcm": D * (K - 1) * (1 + iv.log(iv.mpf(3 * L)) / 2 + iv.log(iv.mpf(lcm_upto(L - 1)))),
        "D_log_Dmn": D * iv.log(iv.mpf(dmn(K - 1, L - 1))),
        "L_feldman": D * ((L - 1) * (iv.log(iv.mpf(4)) + 1) + iv.log(iv.mpf(feldman_min))),
        "log_fact": iv.log(iv.mpf(math.factorial(K - 1))),
        "B_term": (K - 1) * (to_interval(logB) - log2),
        "A_term": (L - 1) * (to_interval(logA) - log2),
    }


def rhs_terms(
    D: int, logA: Any, logB: Any, K: int, L: int, E: Fraction, beta_abs: Any
) -> Dict[str, Any]:
    terms = static_terms(D, logA, logB, K, L)
    e_iv = to_interval(E)
    terms["LE_beta"] = L * e_iv * beta_abs
    terms["L_logE"] = L * iv.log(e_iv)
    return terms


def _sum(terms: Dict[str, Any]) -> Any:
    total = iv.mpf(0)
    for name in TERM_NAMES:
        total += terms[name]
    return total


def theorem1_rhs(
    alpha: Number,
    beta: Number,
    D: int,
    logA: Any,
    logB: Any,
    K: int,
    L: int,
    E: Fraction | str,
    precision: int = DEFAULT_PRECISION,
) -> RealDR:
    E = parse_rational(E) if isinstance(E, str) else Fraction(E)
    _check_shape(K, L, E)
    beta = as_algebraic(beta)
    with precision_context(precision):
        terms = rhs_terms(D, logA, logB, K, L, E, beta.abs_interval())
        return RealDR.from_interval(_sum(terms), "up", precision)


def lhs_interval(K: int, L: int, E: Fraction) -> Any:
    return K * L * iv.log(to_interval(E))


def lhs_value(K: int, L: int, E: Fraction | str, precision: int = DEFAULT_PRECISION) -> RealDR:
    E = parse_rational(E) if isinstance(E, str) else Fraction(E)
    _check_shape(K, L, E)
    with precision_context(precision):
        return RealDR.from_interval(lhs_interval(K, L, E), "down", precision)


# ========= certify ========= #

def _term_breakdown(terms: Dict[str, Any], lhs: Any, rhs: Any) -> Dict[str, str]:
    out = {name: interval_decimal(terms[name], "up") for name in TERM_NAMES}
    out["lhs"] = interval_decimal(lhs, "down")
    out["rhs"] = interval_decimal(rhs, "up")
    out["margin"] = interval_decimal(lhs - rhs, "down")
    return out


def _zero_alpha_ok(alpha: AlgebraicNumber, lhs: Any, beta_abs: Any) -> bool:
    """α = 0：|e^β| ≥ e^{−|β|}，需要 KL·log E > |β|。"""
    return not alpha.is_zero or lower(lhs) > upper(beta_abs)


def certify(
    alpha: Number,
    beta: Number,
    K: int,
    L: int,
    E: Fraction | str,
    precision: int = DEFAULT_PRECISION,
    logA: Optional[Fraction | str] = None,
    logB: Optional[Fraction | str] = None,
) -> BoundCertificate:
    alpha, beta = as_algebraic(alpha), as_algebraic(beta)
    E = parse_rational(E) if isinstance(E, str) else Fraction(E)
    if beta.is_zero:
        raise HypothesisNotMet("beta must be nonzero")
    _check_shape(K, L, E)
    D = field_degree_ratio(alpha, beta)

    with precision_context(precision):
        logA_q, logB_q = resolve_log_heights(alpha, beta, D, logA, logB)
        beta_abs = beta.abs_interval()
        terms = rhs_terms(D, logA_q, logB_q, K, L, E, beta_abs)
        rhs = _sum(terms)
        lhs = lhs_interval(K, L, E)
        breakdown = _term_breakdown(terms, lhs, rhs)

        if lower(lhs) < upper(rhs):
            logger.info(f"rejected K={K}, L={L}, E={E}: margin {breakdown['margin']}")
            raise BoundRejected(f"KL*log(E) < right-hand side for K={K}, L={L}, E={E}", terms=breakdown)
        if not _zero_alpha_ok(alpha, lhs, beta_abs):
            raise BoundRejected(f"alpha = 0 needs KL*log(E) > |beta| (K={K}, L={L}, E={E})", terms=breakdown)
        if parse_decimal(breakdown["lhs"]) < parse_decimal(breakdown["rhs"]):
            raise BoundRejected("decimal rounding of the two sides crosses over", terms=breakdown)

        log_eps_lower = interval_decimal(-lhs, "down")

    # sanity：4 倍精度下的 |e^β − α| 必須真的 ≥ E^{−KL}
    check_prec = 4 * precision
    with precision_context(check_prec):
        eps = epsilon_interval(alpha, beta, check_prec)
        if lower(iv.log(eps)) < upper(-lhs_interval(K, L, E)):
            logger.error(f"|e^beta - alpha| < E^(-KL) for alpha={alpha}, beta={beta}, K={K}, L={L}, E={E}")
            raise InconsistencyError("certified lower bound contradicts the evaluated |e^beta - alpha|")

    return BoundCertificate(
        alpha=str(alpha),
        beta=str(beta),
        D=D,
        logA=format_decimal(logA_q, "up"),
        logB=format_decimal(logB_q, "up"),
        K=K,
        L=L,
        E=f"{E.numerator}/{E.denominator}",
        lhs=breakdown["lhs"],
        rhs=breakdown["rhs"],
        log_eps_lower=log_eps_lower,
        precision_bits=precision,
        version=__version__,
        terms={name: breakdown[name] for name in TERM_NAMES},
    )


# ========= search ========= #

def _snap_up(x: mpmath.mpf, bits: int = SNAP_BITS) -> Fraction:
    scale = 1 << bits
    return Fraction(int(mpmath.ceil(x * scale)), scale)


def _cell_passes(
    alpha: AlgebraicNumber, D: int, logA: Fraction, logB: Fraction, K: int, L: int, E: Fraction, beta_abs: Any
) -> bool:
    terms = rhs_terms(D, logA, logB, K, L, E, beta_abs)
    lhs = lhs_interval(K, L, E)
    return lower(lhs) >= upper(_sum(terms)) and _zero_alpha_ok(alpha, lhs, beta_abs)


def smallest_admissible_E(
    alpha: AlgebraicNumber,
    D: int,
    logA: Fraction,
    logB: Fraction,
    K: int,
    L: int,
    beta_abs: Any,
    snap_bits: int = SNAP_BITS,
) -> Optional[Fraction]:
    """
    margin(E) = (K−1)L·log E − L|β|E − C 在 E* = (K−1)/|β| 取最大值；
    在 (1, E*] 二分出左端點，snap 到分母 2^snap_bits 的有理數後再 exact 驗一次。
    """
    if K < 2:
        return None
    C = upper(_sum({**static_terms(D, logA, logB, K, L), "LE_beta": iv.mpf(0), "L_logE": iv.mpf(0)}))
    b = upper(beta_abs)

    def margin(e: mpmath.mpf) -> mpmath.mpf:
        return (K - 1) * L * mpmath.log(e) - L * b * e - C

    e_star = mpmath.mpf(K - 1) / b
    if e_star <= 1 or margin(e_star) < 0:
        return None
    lo, hi = mpmath.mpf(1), e_star
    for _ in range(BISECTION_STEPS):
        mid = (lo + hi) / 2
        if margin(mid) >= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < hi * mpmath.mpf(2) ** (-snap_bits - 4):
            break
    E = _snap_up(hi, snap_bits)
    for _ in range(NUDGES):
        if _cell_passes(alpha, D, logA, logB, K, L, E, beta_abs):
            return E
        E = _snap_up(E.numerator / mpmath.mpf(E.denominator) * (1 + mpmath.mpf(2) ** (-snap_bits)), snap_bits)
    return None


def search_best(
    alpha: Number,
    beta: Number,
    max_K: int = 40,
    max_L: int = 12,
    precision: int = DEFAULT_PRECISION,
    logA: Optional[Fraction | str] = None,
    logB: Optional[Fraction | str] = None,
    snap_bits: int = SNAP_BITS,
) -> BoundCertificate:
    """
    對每個 (K, L) 找最小的可行 E，取 KL·log E 最小（結論最強）的那一格，再完整 certify。
    各格互相獨立；mpmath 的精度是 global state，所以這裡依序計算。

    E 的格點就是 snap_bits：E 只取分母為 2^snap_bits 的有理數（預設 2^20，
    設定檔的 search.denominator_bits），二分出的端點往上 snap 到這個格點。
    """
    if max_K < 1 or max_L < 1:
        raise ValueError("search caps must be >= 1")
    alpha, beta = as_algebraic(alpha), as_algebraic(beta)
    if beta.is_zero:
        raise HypothesisNotMet("beta must be nonzero")
    D = field_degree_ratio(alpha, beta)

    best: Optional[Tuple[mpmath.mpf, int, int, Fraction]] = None
    with precision_context(precision):
        logA_q, logB_q = resolve_log_heights(alpha, beta, D, logA, logB)
        beta_abs = beta.abs_interval()
        for L in range(2, max_L + 1):
            for K in range(1, max_K + 1):
                E = smallest_admissible_E(alpha, D, logA_q, logB_q, K, L, beta_abs, snap_bits)
                if E is None:
                    continue
                objective = K * L * mpmath.log(mpmath.mpf(E.numerator) / E.denominator)
                logger.debug(f"feasible K={K}, L={L}, E={float(E):.6f}, KL*log(E)={mpmath.nstr(objective, 8)}")
                if best is None or objective < best[0]:
                    best = (objective, K, L, E)

    if best is None:
        raise NoCertificateFound(f"no certificate at these caps (K <= {max_K}, L <= {max_L})")
    _, K, L, E = best
    given_A = logA if logA is None else logA_q
    given_B = logB if logB is None else logB_q
    cert = certify(alpha, beta, K, L, E, precision, given_A, given_B)
    logger.info(f"best certificate K={K}, L={L}, E={cert.E}: log|e^beta - alpha| >= {cert.log_eps_lower}")
    return cert


# ========= verify ========= #

def verify_certificate(cert: BoundCertificate, precision: Optional[int] = None) -> SuiteReport:
    """
    從頭重算 lhs / rhs；任何一項不符就 passed = False。

    證書裡的十進位字串必須跟在 cert.precision_bits 下重算、依同樣方向捨入的結果逐字相同，
    所以往上或往下改一點都會被抓到。precision 只影響 recomputed_inequality 那一項。
    解析錯誤（α、β、E、數字欄位）直接丟 ParseError。
    """
    precision = precision or cert.precision_bits
    report = SuiteReport("verify")
    alpha, beta = parse_algebraic(cert.alpha), parse_algebraic(cert.beta)
    E = parse_rational(cert.E)
    logA, logB = parse_decimal(cert.logA), parse_decimal(cert.logB)
    for name in ("lhs", "rhs", "log_eps_lower"):
        parse_decimal(getattr(cert, name))

    shape_ok = (
        cert.K >= 1
        and cert.L >= 2
        and E > 1
        and not beta.is_zero
        and cert.precision_bits >= MIN_PRECISION
        and precision >= MIN_PRECISION
    )
    report.add(CheckResult("shape", shape_ok, 1, f"K={cert.K}, L={cert.L}, E={cert.E}, precision={cert.precision_bits}"))
    if not shape_ok:
        return report

    D = field_degree_ratio(alpha, beta)
    report.add(CheckResult("degree_ratio", D == cert.D, 1, f"D={D}, stored {cert.D}"))

    with precision_context(cert.precision_bits):
        for name, x, value in (("logA", alpha, logA), ("logB", beta, logB)):
            adm = admissible_log_height(x, D)
            report.add(
                CheckResult(f"{name}_admissible", value >= mpf_to_fraction(upper(adm)), 1, f"{name}={getattr(cert, name)}")
            )
        beta_abs = beta.abs_interval()
        terms = rhs_terms(D, logA, logB, cert.K, cert.L, E, beta_abs)
        lhs = lhs_interval(cert.K, cert.L, E)
        expected = _term_breakdown(terms, lhs, _sum(terms))
        expected_conclusion = interval_decimal(-lhs, "down")

    for name, stored, fresh in (
        ("lhs_reproduced", cert.lhs, expected["lhs"]),
        ("rhs_reproduced", cert.rhs, expected["rhs"]),
        ("conclusion_reproduced", cert.log_eps_lower, expected_conclusion),
    ):
        report.add(CheckResult(name, stored.strip() == fresh, 1, f"stored {stored}, recomputed {fresh}"))
    if cert.terms:
        bad = sorted(k for k in TERM_NAMES if cert.terms.get(k) != expected[k])
        report.add(CheckResult("terms_reproduced", not bad, len(TERM_NAMES), ", ".join(bad)))
    report.add(
        CheckResult(
            "stored_inequality",
            parse_decimal(cert.lhs) >= parse_decimal(cert.rhs),
            1,
            f"{cert.lhs} >= {cert.rhs}",
        )
    )

    with precision_context(precision):
        beta_abs = beta.abs_interval()
        lhs = lhs_interval(cert.K, cert.L, E)
        rhs = _sum(rhs_terms(D, logA, logB, cert.K, cert.L, E, beta_abs))
        report.add(CheckResult("recomputed_inequality", lower(lhs) >= upper(rhs), 1))
        report.add(CheckResult("zero_alpha", _zero_alpha_ok(alpha, lhs, beta_abs), 1))

    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        logger.info(f"certificate {cert.key} failed: {', '.join(failed)}")
    return report


__all__ = [
    "SNAP_BITS",
    "TERM_NAMES",
    "admissible_log_height",
    "resolve_log_heights",
    "static_terms",
    "rhs_terms",
    "theorem1_rhs",
    "lhs_interval",
    "lhs_value",
    "certify",
    "smallest_admissible_E",
    "search_best",
    "verify_certificate",
]
