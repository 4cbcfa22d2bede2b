"""
虛二次整數的漸近常數：α, β 為虛二次整數時 |e^β − α| ≥ |β|^{−c|β|}。

取 K = ⌊c₁|β|⌋、L = ⌊c₂ log|β|⌋，忽略 o(1) 後條件變成

    c₁c₂·log E = c₁c₂(1 + log 2) + 2c₁ + E·c₂

對 c₁ 解出、對 c₂ 最佳化得 c₂ = 4/(log E − 1 − log 2)，剩下單變數

    f(E) = 8E·log E / (log E − 1 − log 2)²

的最小值 ≈ 276.55，位置 E ≈ 25.0059。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import mpmath
from mpmath import iv

from .errors import InconsistencyError
from .exactnum import RealDR, lower, precision_context, to_interval, workprec
from .numtheory import PrimeTable, primes_upto, psi_interval

logger = logging.getLogger("Asymptotics")

# α, β ∈ ℤ 情形的歷史常數，只做輸出參考
HISTORICAL_CONSTANTS: Dict[str, str] = {
    "Mahler": "33",
    "Mignotte": "21",
    "Wielonsky": "19.187",
}

INV_PHI = (mpmath.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - mpmath.sqrt(5)) / 2

MAX_ITER = 2000


@dataclass(frozen=True)
class AsymptoticSolution:
    E: RealDR
    c1: RealDR
    c2: RealDR
    gamma: RealDR
    objective: RealDR
    method: str = "closed_form"

    def to_dict(self, digits: int = 20) -> Dict[str, str]:
        return {
            "E": self.E.to_decimal(digits),
            "c1": self.c1.to_decimal(digits),
            "c2": self.c2.to_decimal(digits),
            "gamma": self.gamma.to_decimal(digits),
            "objective": self.objective.to_decimal(digits),
            "method": self.method,
        }


# ========= 目標函數 ========= #

def _u(E: Any) -> Any:
    return mpmath.log(E) - 1 - mpmath.log(2)


def reduced_objective(E: Any) -> mpmath.mpf:
    """f(E) = 8E·log E/(log E − 1 − log 2)²。"""
    return 8 * E * mpmath.log(E) / _u(E) ** 2


def reduced_derivative(E: Any) -> mpmath.mpf:
    """f′(E) = 8((log E + 1)·u − 2·log E)/u³。"""
    t, u = mpmath.log(E), _u(E)
    return 8 * ((t + 1) * u - 2 * t) / u**3


def two_variable_objective(c2: Any, E: Any) -> mpmath.mpf:
    """c₂²E·log E/(c₂(log E − 1 − log 2) − 2)。"""
    return c2**2 * E * mpmath.log(E) / (c2 * _u(E) - 2)


def _solution_at(E: mpmath.mpf, precision: int, method: str) -> AsymptoticSolution:
    u = _u(E)
    c2 = 4 / u
    c1 = c2 * E / (c2 * u - 2)
    gamma = mpmath.log(2) ** 2 + 8 * mpmath.log(2) + 8

    def dr(x: mpmath.mpf) -> RealDR:
        return RealDR(x, "nearest", precision)

    return AsymptoticSolution(
        E=dr(E),
        c1=dr(c1),
        c2=dr(c2),
        gamma=dr(gamma),
        objective=dr(c1 * c2 * mpmath.log(E)),
        method=method,
    )


def closed_form_solution(precision: int = 128) -> AsymptoticSolution:
    with workprec(precision):
        log2 = mpmath.log(2)
        gamma = log2**2 + 8 * log2 + 8
        root = mpmath.sqrt(gamma)
        E = mpmath.exp(1 + log2 / 2 + root / 2)
        solution = _solution_at(E, precision, "closed_form")
        # 兩種寫法要一致
        closed = 16 * mpmath.sqrt(2) * mpmath.exp(1 + root / 2) * (2 + log2 + root) / (root - log2) ** 2
        if abs(closed - solution.objective.value) > closed * mpmath.mpf(2) ** (20 - precision):
            raise InconsistencyError("closed-form objective disagrees with c1*c2*log(E)")
        return solution


# ========= 數值最佳化 ========= #

def gss(f: Any, a: Any, b: Any, tol: Any) -> Tuple[Any, Any]:
    """
    Golden-section search：f 在 [a, b] 單峰，回傳包含極小值、寬度 ≤ tol 的區間。
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b
    n = int(mpmath.ceil(mpmath.log(tol / h) / mpmath.log(INV_PHI)))
    if n > MAX_ITER:
        raise InconsistencyError(f"golden-section search needs {n} > {MAX_ITER} steps")

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(n - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    return (a, d) if yc < yd else (c, b)


def numeric_optimize(tolerance: float = 1e-12, precision: int = 128) -> AsymptoticSolution:
    """
    先用 golden-section 在 (2e, 1000] 夾出極小值，再對 f′ 的符號二分到 tolerance（相對）。
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    with workprec(precision):
        left = 2 * mpmath.e + mpmath.mpf("0.01")
        a, b = gss(reduced_objective, left, mpmath.mpf(1000), mpmath.mpf("1e-3"))
        a, b = max(left, a - 1), b + 1
        if not (reduced_derivative(a) < 0 < reduced_derivative(b)):
            raise InconsistencyError(f"derivative does not change sign on [{a}, {b}]")
        for _ in range(MAX_ITER):
            if b - a <= tolerance * a:
                break
            mid = (a + b) / 2
            if reduced_derivative(mid) < 0:
                a = mid
            else:
                b = mid
        else:
            raise InconsistencyError("bisection on f' did not converge")
        return _solution_at((a + b) / 2, precision, "numeric")


# ========= 有限 |β| ========= #

def parameters_for(beta_abs: Any, solution: AsymptoticSolution) -> Tuple[int, int]:
    """K = ⌊c₁|β|⌋、L = ⌊c₂ log|β|⌋（只用 floor）。"""
    with workprec(solution.E.precision):
        b = mpmath.mpf(beta_abs)
        K = int(mpmath.floor(solution.c1.value * b))
        L = int(mpmath.floor(solution.c2.value * mpmath.log(b)))
    return K, L


def effective_exponent(beta_abs: Any, K: int, L: int, E: Any, precision: int = 128) -> RealDR:
    """KL·log E/(|β|·log|β|)。"""
    with workprec(precision):
        b = mpmath.mpf(beta_abs)
        if b <= mpmath.e:
            raise ValueError("effective exponent needs |beta| > e")
        value = K * L * mpmath.log(mpmath.mpf(E)) / (b * mpmath.log(b))
        return RealDR(value, "nearest", precision)


def log_dmn(m: int, n: int) -> mpmath.mpf:
    """log D_{m,n} = log m! − Σ_{q ≤ n} v_q(m!)·log q，m 很大時也能算。"""
    total = mpmath.loggamma(m + 1)
    for q in primes_upto(min(n, m)):
        total -= PrimeTable.factorial_valuation(m, q) * mpmath.log(q)
    return total


@dataclass(frozen=True)
class FiniteSizeReport:
    beta_abs: str
    K: int
    L: int
    E: str
    exponent: RealDR
    normalised_margin: RealDR

    def to_dict(self) -> Dict[str, Any]:
        return {
            "beta_abs": self.beta_abs,
            "K": self.K,
            "L": self.L,
            "E": self.E,
            "exponent": self.exponent.to_decimal(12),
            "normalised_margin": self.normalised_margin.to_decimal(12),
        }


def finite_size_report(beta_abs: Any, precision: int = 128) -> FiniteSizeReport:
    """
    D = 1、𝒜 = ℬ = 1 時主不等式的 (lhs − rhs)/(|β| log|β|)，K、L 依 floor 取，E 取最佳值。
    log d_n 用 ψ，log m! 用 log Γ。
    """
    solution = closed_form_solution(precision)
    K, L = parameters_for(beta_abs, solution)
    if K < 2 or L < 2:
        raise ValueError(f"|beta| = {beta_abs} is too small: K={K}, L={L}")
    with precision_context(precision):
        b = mpmath.mpf(beta_abs)
        E = solution.E.value
        log2 = mpmath.log(2)

        def psi(x: int) -> mpmath.mpf:
            return lower(psi_interval(x))

        feldman_log = min((K - 1) * psi(L - 2), mpmath.loggamma(L - 1))
        rhs = (
            K * L * log2
            + (K - 1) * (1 + mpmath.log(3 * L) / 2 + psi(L - 1))
            + log_dmn(K - 1, L - 1)
            + (L - 1) * (mpmath.log(4) + 1)
            + feldman_log
            + mpmath.loggamma(K)
            - (K - 1) * log2
            - (L - 1) * log2
            + L * E * b
            + L * mpmath.log(E)
        )
        lhs = K * L * mpmath.log(E)
        margin = (lhs - rhs) / (b * mpmath.log(b))
        return FiniteSizeReport(
            beta_abs=mpmath.nstr(b, 15),
            K=K,
            L=L,
            E=mpmath.nstr(E, 15),
            exponent=effective_exponent(b, K, L, E, precision),
            normalised_margin=RealDR(margin, "nearest", precision),
        )


# ========= factorial bounds ========= #

def stirling_gamma_interval(x: Any) -> Tuple[Any, Any]:
    """Γ(x) 的上下界 √(2π(x−1))·((x−1)/e)^{x−1}·[1, e^{1/(12(x−1))}]（目前精度）。"""
    y = to_interval(x) - 1
    base = iv.sqrt(2 * iv.pi * y) * (y / iv.e) ** y
    return base, base * iv.exp(1 / (12 * y))


def stirling_gamma_bracket(x: Any, precision: int = 128) -> Tuple[RealDR, RealDR]:
    if not x > 1:
        raise ValueError("the Gamma bracket needs x > 1")
    with precision_context(precision):
        lo, hi = stirling_gamma_interval(x)
        return RealDR.from_interval(lo, "down", precision), RealDR.from_interval(hi, "up", precision)


__all__ = [
    "HISTORICAL_CONSTANTS",
    "AsymptoticSolution",
    "reduced_objective",
    "reduced_derivative",
    "two_variable_objective",
    "closed_form_solution",
    "gss",
    "numeric_optimize",
    "parameters_for",
    "effective_exponent",
    "log_dmn",
    "FiniteSizeReport",
    "finite_size_report",
    "stirling_gamma_interval",
    "stirling_gamma_bracket",
]
