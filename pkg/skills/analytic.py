"""
解析面：Φ_{k,ℓ}^{(μ)}、w_{k,ℓ}、包絡 𝒩、Schwarz lemma、|𝒟| 的上界，
以及 𝒟(z) 的高精度數值計算（只拿來交叉檢查，證書不依賴這個模組）。

Φ_{k,ℓ}(z) = z^k e^{ℓz}，
Φ^{(μ)}(z) = e^{ℓz}·Σ_j C(μ,j)·k!/(k−j)!·z^{k−j}·ℓ^{μ−j}。

δ^μ(X^kY^ℓ)(β,α) = Φ^{(μ)}(β) + ε·w_{k,ℓ}，ε = |e^β − α|。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, List

import mpmath
import numpy as np
from mpmath import iv

from .errors import HypothesisNotMet, InconsistencyError
from .exactnum import (
    DEFAULT_PRECISION,
    AlgebraicNumber,
    RealDR,
    embed,
    iv_max,
    lower,
    precision_context,
    to_interval,
    upper,
    workprec,
)
from .interp import InterpolationSystem

logger = logging.getLogger("Analytic")

CIRCLE_SAMPLES = 64
MIN_DET_PRECISION = 128
_ESCALATIONS = 4


# ========= ε = |e^β − α| ========= #

def epsilon_interval(alpha: AlgebraicNumber, beta: AlgebraicNumber, precision: int = DEFAULT_PRECISION) -> Any:
    """|e^β − α| 的 iv 區間（outward rounding）。"""
    with precision_context(precision):
        diff = embed(beta, precision).exp() - embed(alpha, precision)
        return diff.abs()


def _coefficient(k: int, ell: int, mu: int, j: int) -> int:
    """C(μ,j)·k!/(k−j)!·ℓ^{μ−j}（0⁰ = 1）。"""
    return math.comb(mu, j) * math.perm(k, j) * ell ** (mu - j)


def _poly_part(k: int, ell: int, mu: int, z: Any) -> Any:
    return sum(
        (_coefficient(k, ell, mu, j) * z ** (k - j) for j in range(min(mu, k) + 1)),
        mpmath.mpc(0),
    )


def phi_mu_at(k: int, ell: int, mu: int, z: Any, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
    with workprec(precision):
        z = mpmath.mpc(z)
        return mpmath.exp(ell * z) * _poly_part(k, ell, mu, z)


def phi_mu_at_zero(k: int, ell: int, s: int) -> int:
    """Φ_{k,ℓ}^{(s)}(0) exact：k ≤ s 時為 C(s,k)·k!·ℓ^{s−k}，否則 0。"""
    return _coefficient(k, ell, s, k) if k <= s else 0


# ========= w_{k,ℓ} ========= #

def _epsilon_and_exp(alpha: AlgebraicNumber, beta: AlgebraicNumber, precision: int) -> tuple:
    """
    (ε, e^β, α, β) 在 mp 下的值；ε 太小就把精度加倍，最多 _ESCALATIONS 次。
    """
    prec = precision
    for _ in range(_ESCALATIONS + 1):
        with workprec(prec):
            a, b = alpha.to_mpc(prec), beta.to_mpc(prec)
            eb = mpmath.exp(b)
            eps = abs(eb - a)
            if eps > mpmath.mpf(2) ** (8 - prec) * max(1, abs(eb)):
                return eps, eb, a, b, prec
        logger.debug(f"|e^beta - alpha| not resolved at {prec} bits, escalating")
        prec *= 2
    raise HypothesisNotMet(f"|e^beta - alpha| is numerically zero up to {prec // 2} bits")


def w_bound(k: int, ell: int, mu: int, beta_abs: Any, eps: Any) -> Any:
    """ℓ·(e^{|β|}+ε)^ℓ·k!·(ℓ+1)^μ。"""
    return ell * (mpmath.exp(beta_abs) + eps) ** ell * math.factorial(k) * (ell + 1) ** mu


def w_weight(
    k: int,
    ell: int,
    mu: int,
    alpha: AlgebraicNumber,
    beta: AlgebraicNumber,
    precision: int = DEFAULT_PRECISION,
) -> mpmath.mpc:
    """
    w_{k,ℓ} = (α^ℓ − e^{βℓ})/|e^β − α| · Σ_j C(μ,j)·k!/(k−j)!·ℓ^{μ−j}·β^{k−j}。
    分母是模長，所以 w 相對於代數分解帶一個單位模的相位；只有 |w| 進入任何上界。
    """
    eps, eb, a, b, prec = _epsilon_and_exp(alpha, beta, precision)
    with workprec(prec):
        w = (a**ell - eb**ell) / eps * _poly_part(k, ell, mu, b)
        bound = w_bound(k, ell, mu, abs(b), eps)
        if abs(w) > bound * (1 + mpmath.mpf(2) ** (16 - prec)):
            logger.error(f"|w_{k},{ell}| = {mpmath.nstr(abs(w), 10)} exceeds {mpmath.nstr(bound, 10)}")
            raise InconsistencyError(f"|w_(k={k}, l={ell})| exceeds its envelope")
        return w


# ========= 參數與包絡 𝒩 ========= #

@dataclass(frozen=True)
class AnalyticParams:
    K: int
    L: int
    mu: int
    E: Fraction
    alpha: AlgebraicNumber
    beta: AlgebraicNumber
    precision: int = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        object.__setattr__(self, "E", Fraction(self.E))
        if self.E <= 1:
            raise ValueError(f"E must exceed 1, got {self.E}")
        if self.L < 2 or self.K < 1:
            raise ValueError(f"need K >= 1 and L >= 2, got K={self.K}, L={self.L}")
        if not 0 <= self.mu <= self.K * self.L - 2:
            raise ValueError(f"mu={self.mu} outside [0, KL-2]")

    @property
    def S(self) -> int:
        return self.K * self.L

    @cached_property
    def epsilon(self) -> Any:
        return epsilon_interval(self.alpha, self.beta, self.precision)

    def epsilon_dr(self, rounding: str = "up") -> RealDR:
        with precision_context(self.precision):
            return RealDR.from_interval(self.epsilon, rounding, self.precision)

    def hypothesis_holds(self) -> bool:
        """ε < E^{−KL}，兩邊都 outward rounding。"""
        with precision_context(self.precision):
            log_eps = iv.log(self.epsilon)
            bound = -self.S * iv.log(to_interval(self.E))
            return upper(log_eps) < lower(bound)


def big_n_interval(params: AnalyticParams) -> Any:
    """
    𝒩 = max{E|β|L, log(L−1) + (L−1)·log(e^{|β|}+ε)} + log((K−1)!) + (μ+1)·log(L+1) + log 2
    （目前精度下的 iv）。
    """
    K, L, mu = params.K, params.L, params.mu
    beta_abs = params.beta.abs_interval()
    first = to_interval(params.E) * beta_abs * L
    second = iv.log(iv.mpf(L - 1)) + (L - 1) * iv.log(iv.exp(beta_abs) + params.epsilon)
    return (
        iv_max(first, second)
        + iv.log(iv.mpf(math.factorial(K - 1)))
        + (mu + 1) * iv.log(iv.mpf(L + 1))
        + iv.log(iv.mpf(2))
    )


def big_n(params: AnalyticParams, check: bool = True) -> RealDR:
    """𝒩，向上捨入；check=True 時順便驗 Σ|w| 與圓周取樣的 Σ|Φ^{(μ)}|。"""
    with precision_context(params.precision):
        value = RealDR.from_interval(big_n_interval(params), "up", params.precision)
    if check:
        report = envelope_check(params, value)
        if not report.passed:
            raise InconsistencyError(
                f"envelope check failed: log sum|w| = {report.log_w_sum}, log sup|Phi| = {report.log_phi_sup}, N = {value}"
            )
    return value


@dataclass(frozen=True)
class EnvelopeReport:
    big_n: RealDR
    log_w_sum: float
    log_phi_sup: float
    samples: int

    @property
    def passed(self) -> bool:
        n = float(self.big_n)
        return self.log_w_sum <= n and self.log_phi_sup <= n


def _w_table(params: AnalyticParams) -> tuple:
    """(ε, w)，w_{k,ℓ} 索引 [ℓ][k]；每個 ℓ 的前因子只算一次。"""
    eps, eb, a, b, prec = _epsilon_and_exp(params.alpha, params.beta, params.precision)
    table: List[List[Any]] = []
    with workprec(prec):
        for ell in range(params.L):
            pre = (a**ell - eb**ell) / eps
            table.append([pre * _poly_part(k, ell, params.mu, b) for k in range(params.K)])
    return eps, table


def envelope_check(params: AnalyticParams, n_value: RealDR | None = None, samples: int = CIRCLE_SAMPLES) -> EnvelopeReport:
    """
    Σ_{k,ℓ}|w_{k,ℓ}| ≤ e^𝒩，以及 |z| = E 圓周上 samples 個點的 Σ|Φ^{(μ)}(zβ)| ≤ e^𝒩。
    取樣只是 sanity check；真正的保證是 𝒩 的 closed form。
    """
    if n_value is None:
        n_value = big_n(params, check=False)
    with workprec(params.precision):
        _, table = _w_table(params)
        w_sum = sum(abs(w) for row in table for w in row)
        beta = params.beta.to_mpc(params.precision)
        radius = mpmath.mpf(params.E.numerator) / params.E.denominator
        sup = mpmath.mpf(0)
        for theta in np.linspace(0.0, 2 * math.pi, samples, endpoint=False):
            z = radius * mpmath.expj(mpmath.mpf(float(theta))) * beta
            total = sum(
                abs(phi_mu_at(k, ell, params.mu, z, params.precision))
                for ell in range(params.L)
                for k in range(params.K)
            )
            sup = max(sup, total)
        return EnvelopeReport(
            big_n=n_value,
            log_w_sum=float(mpmath.log(w_sum)) if w_sum else float("-inf"),
            log_phi_sup=float(mpmath.log(sup)),
            samples=samples,
        )


# ========= Schwarz lemma ========= #

def schwarz_bound(T: int, r: Any, R: Any, sup_R: Any, precision: int = DEFAULT_PRECISION) -> RealDR:
    """|ψ|_r ≤ (R/r)^{−T}·|ψ|_R，向上捨入。"""
    if T < 0:
        raise ValueError("T must be non-negative")
    with precision_context(precision):
        r_iv, R_iv, s_iv = to_interval(r), to_interval(R), to_interval(sup_R)
        if not lower(r_iv) > 0:
            raise ValueError("r must be positive")
        if lower(r_iv) > upper(R_iv):
            raise HypothesisNotMet(f"Schwarz lemma needs r <= R, got r={r}, R={R}")
        value = (r_iv / R_iv) ** T * s_iv
        return RealDR.from_interval(value, "up", precision)


def circle_sup(coeffs: List[Any], radius: Any, samples: int = CIRCLE_SAMPLES) -> float:
    """Σ c_n z^n 在 |z| = radius 上的取樣最大模（numpy）。"""
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    z = float(radius) * np.exp(1j * theta)
    values = np.polyval(np.array([complex(c) for c in reversed(coeffs)]), z)
    return float(np.max(np.abs(values)))


# ========= |𝒟| ========= #

def det_upper_bound_interval(params: AnalyticParams, system: InterpolationSystem) -> Any:
    if system.minors is None:
        raise ValueError("the archimedean norm |M0| needs a system built from maximal minors")
    if (system.K, system.L) != (params.K, params.L):
        raise ValueError("system shape does not match parameters")
    m0_norm = iv.sqrt(iv.mpf(sum(m * m for m in system.minors)))
    return (
        -(params.S - params.mu - 1) * iv.log(to_interval(params.E))
        + big_n_interval(params)
        + iv.log(m0_norm)
        + iv.log(iv.mpf(2))
    )


def det_upper_bound(
    params: AnalyticParams,
    system: InterpolationSystem,
    require_hypothesis: bool = True,
) -> RealDR:
    """log|𝒟| ≤ −(KL−μ−1)·log E + 𝒩 + log|M₀| + log 2，需要 ε < E^{−KL}。"""
    if not params.hypothesis_holds():
        if require_hypothesis:
            raise HypothesisNotMet(f"|e^beta - alpha| < E^(-KL) fails for E={params.E}, KL={params.S}")
        logger.warning(f"det_upper_bound used outside its hypothesis (E={params.E}, KL={params.S})")
    with precision_context(params.precision):
        return RealDR.from_interval(det_upper_bound_interval(params, system), "up", params.precision)


def numeric_det(
    params: AnalyticParams,
    system: InterpolationSystem,
    z: Any = 1,
    include_epsilon: bool = True,
) -> mpmath.mpc:
    """
    𝒟(z) = Σ cofactor_{k,ℓ}·(Φ^{(μ)}_{k,ℓ}(βz) + ε·w_{k,ℓ})，沿最後一列展開。
    include_epsilon=False 得到 𝒟₀(z)。
    """
    if params.precision < MIN_DET_PRECISION:
        raise ValueError(f"numeric_det needs at least {MIN_DET_PRECISION} bits")
    eps, w = _w_table(params) if include_epsilon else (0, None)
    with workprec(params.precision):
        bz = params.beta.to_mpc(params.precision) * mpmath.mpc(z)
        total = mpmath.mpc(0)
        for (k, ell), c in zip(system.columns, system.cofactors):
            if not c:
                continue
            entry = phi_mu_at(k, ell, params.mu, bz, params.precision)
            if w is not None:
                entry += eps * w[ell][k]
            total += c * entry
        return total


__all__ = [
    "CIRCLE_SAMPLES",
    "MIN_DET_PRECISION",
    "epsilon_interval",
    "phi_mu_at",
    "phi_mu_at_zero",
    "w_bound",
    "w_weight",
    "AnalyticParams",
    "big_n_interval",
    "big_n",
    "EnvelopeReport",
    "envelope_check",
    "schwarz_bound",
    "circle_sup",
    "det_upper_bound_interval",
    "det_upper_bound",
    "numeric_det",
]
