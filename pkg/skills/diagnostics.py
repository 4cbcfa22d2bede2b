"""
證明的矛盾本身：同一個 log G_{β,α}，

- Liouville 型下界：只用到 G₁、G₂ 是整係數多項式與它們的長度
- 解析上界：假設 ε < E^{−KL} 時成立

在 certificate 的參數下，上界會嚴格落在下界之下。
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Any, Literal, Optional, Sequence

from mpmath import iv

from storage.models import DiagnosticReport

from .analytic import epsilon_interval
from .bound_engine import Number, resolve_log_heights
from .errors import HypothesisNotMet, InconsistencyError
from .exactnum import (
    DEFAULT_PRECISION,
    AlgebraicNumber,
    RealDR,
    as_algebraic,
    field_degree_ratio,
    height_interval,
    interval_decimal,
    iv_max,
    log_max1_abs_interval,
    lower,
    parse_rational,
    precision_context,
    to_interval,
    upper,
)
from .interp import (
    InterpolationSystem,
    build_m0,
    find_mu,
    g_polynomials,
    log_g_interval,
    m0_height_interval,
)
from .numtheory import lcm_upto

logger = logging.getLogger("Diagnostics")

SystemMode = Literal["auto", "minors", "dual"]

# S 超過這個值就改用 dual vector
MINORS_LIMIT = 30


# ========= Liouville ========= #

def liouville_lower_interval(
    points: Sequence[AlgebraicNumber],
    degrees: Sequence[int],
    length: Fraction | int,
    D: int,
) -> Any:
    if len(points) != len(degrees):
        raise ValueError("one degree per point is required")
    if length < 1:
        raise ValueError("an integer polynomial with f(points) != 0 has length >= 1")
    total = -(D - 1) * iv.log(to_interval(Fraction(length)))
    for x, n in zip(points, degrees):
        h = iv.mpf(0) if x.is_zero else height_interval(x)
        total += n * log_max1_abs_interval(x) - D * n * h
    return total


def liouville_lower(
    points: Sequence[AlgebraicNumber],
    degrees: Sequence[int],
    length: Fraction | int,
    D: Optional[int] = None,
    precision: int = DEFAULT_PRECISION,
) -> RealDR:
    """
    log|f(α₁,…,α_n)| ≥ −(D−1)·log L(f) + Σ N_i·log max(1,|α_i|) − D·Σ N_i·h(α_i)，向下捨入。
    f(α) ≠ 0 由呼叫端保證。
    """
    if D is None:
        D = field_degree_ratio(*points)
    with precision_context(precision):
        return RealDR.from_interval(liouville_lower_interval(points, degrees, length, D), "down", precision)


# ========= 兩個命題的界 ========= #

def _length_bound(factor: int, log_h: Any, mu: int, K: int, L: int) -> Any:
    """log(factor·H·2^{μ+K−1}·e^{L−1}·√L)。"""
    return (
        iv.log(iv.mpf(factor))
        + log_h
        + (mu + K - 1) * iv.log(iv.mpf(2))
        + (L - 1)
        + iv.log(iv.mpf(L)) / 2
    )


def log_g_lower(D: int, logA: Any, logB: Any, K: int, L: int, mu: int, log_h: Any) -> Any:
    small = min(lcm_upto(mu) ** (K - 1), math.factorial(mu))
    return (
        -(D - 1) * _length_bound(small, log_h, mu, K, L)
        - (K - 1) * to_interval(logB)
        - (L - 1) * to_interval(logA)
    )


def log_g_upper(
    K: int, L: int, mu: int, E: Fraction, beta_abs: Any, eps: Any, log_h: Any
) -> Any:
    small = min(lcm_upto(mu) ** (K - 1), math.factorial(mu))
    e_iv = to_interval(E)
    envelope = iv_max(
        e_iv * beta_abs * L,
        iv.log(iv.mpf(L)) + L * iv.log(iv.exp(beta_abs) + eps),
    )
    return (
        -(K * L - mu - 1) * iv.log(e_iv)
        + iv.log(iv.mpf(4))
        + iv.log(iv.mpf(math.factorial(K - 1)))
        + envelope
        + (mu + 1) * iv.log(iv.mpf(L + 1))
        + iv.log(iv.mpf(small))
        + log_h
        - iv.log(iv.mpf(math.factorial(mu)))
    )


def _system(K: int, L: int, mode: SystemMode) -> InterpolationSystem:
    if mode == "minors" or (mode == "auto" and K * L <= MINORS_LIMIT):
        return build_m0(K, L)
    return InterpolationSystem.from_dual(K, L)


# ========= diagnose ========= #

def diagnose(
    alpha: Number,
    beta: Number,
    K: int,
    L: int,
    E: Fraction | str,
    precision: int = DEFAULT_PRECISION,
    mode: SystemMode = "auto",
) -> DiagnosticReport:
    alpha, beta = as_algebraic(alpha), as_algebraic(beta)
    E = parse_rational(E) if isinstance(E, str) else Fraction(E)
    if alpha.is_zero:
        raise HypothesisNotMet("diagnose needs alpha != 0")
    if E <= 1:
        raise ValueError(f"E must exceed 1, got {E}")
    D = field_degree_ratio(alpha, beta)

    system = _system(K, L, mode)
    evaluation = find_mu(system, alpha, beta)
    mu = evaluation.mu
    g1, g2 = g_polynomials(evaluation, system)

    with precision_context(precision):
        logA, logB = resolve_log_heights(alpha, beta, D)
        log_h = iv.log(m0_height_interval(system))
        beta_abs = beta.abs_interval()
        eps = epsilon_interval(alpha, beta, precision)

        log_g = log_g_interval(evaluation)
        low = log_g_lower(D, logA, logB, K, L, mu, log_h)
        hypothesis = upper(iv.log(eps)) < lower(-K * L * iv.log(to_interval(E)))
        # 上界在 ε < E^{−KL} 的假設下使用：假設不成立時以 E^{−KL} 代替 ε
        eps_used = eps if hypothesis else to_interval(E) ** (-K * L)
        up = log_g_upper(K, L, mu, E, beta_abs, eps_used, log_h)

        lower_holds = lower(low) <= upper(log_g)
        if not lower_holds:
            logger.error(
                f"exact log G = {interval_decimal(log_g, 'up')} "
                f"below the Liouville bound {interval_decimal(low, 'down')}"
            )
            raise InconsistencyError("exact log G_{beta,alpha} is below the Liouville lower bound")
        if hypothesis and lower(log_g) > upper(up):
            logger.error("exact log G exceeds the analytic upper bound although eps < E^(-KL)")
            raise InconsistencyError("exact log G_{beta,alpha} exceeds the analytic upper bound")

        lengths = {}
        for name, poly, factor in (
            ("G1", g1, lcm_upto(mu) ** (K - 1)),
            ("G2", g2, math.factorial(mu)),
        ):
            exact = iv.log(to_interval(poly.length()))
            bound = _length_bound(factor, log_h, mu, K, L)
            if lower(exact) > upper(bound):
                raise InconsistencyError(f"L({name}) exceeds its length bound")
            lengths[f"log_L_{name}"] = interval_decimal(exact, "up")
            lengths[f"log_L_{name}_bound"] = interval_decimal(bound, "up")

        contradiction = upper(up) < lower(low)
        gap = low - up
        logger.debug(
            f"diagnose K={K}, L={L}, mu={mu}: lower {interval_decimal(low, 'down')}, upper {interval_decimal(up, 'up')}, contradiction={contradiction}"
        )
        return DiagnosticReport(
            alpha=str(alpha),
            beta=str(beta),
            K=K,
            L=L,
            E=f"{E.numerator}/{E.denominator}",
            mu=mu,
            source=system.source,
            log_height=interval_decimal(log_h, "up"),
            log_g=RealDR.from_interval(log_g, "nearest", precision).to_decimal(),
            lower=interval_decimal(low, "down"),
            upper=interval_decimal(up, "up"),
            gap=interval_decimal(gap, "down"),
            contradiction=contradiction,
            lower_holds=lower_holds,
            upper_hypothesis_holds=hypothesis,
            lengths=lengths,
            mu_exceeds_l_minus_2=evaluation.mu_exceeds_l_minus_2,
        )


__all__ = [
    "MINORS_LIMIT",
    "liouville_lower_interval",
    "liouville_lower",
    "log_g_lower",
    "log_g_upper",
    "diagnose",
]
