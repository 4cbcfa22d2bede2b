"""
Interpolation determinant 的整數部分：

- M₀：(S−1)×S 整數矩陣，列 s = 0..S−2，欄 (k,ℓ)，元素 C(s,k)·k!·ℓ^{s−k}（k > s 時為 0）
- 最後一列換成 δ^μ(X^kY^ℓ) 後沿最後一列展開：cofactor_c = (−1)^{(S−1)+c}·Δ_c
- H(X,Y) = Σ cofactor·X^kY^ℓ，F = δ^μ H，G₁、G₂、G_{β,α}
- 矩陣高度 H(M₀)（Cauchy-Binet 與 dual vector 兩種算法）

欄位順序：欄 (k,ℓ) 放在 index ℓ·K + k（同一個 ℓ 內 k 先跑）。

兩種建構方式：
- build_m0：S 個 maximal minors 全部用 Bareiss 算（小 S）
- InterpolationSystem.from_dual：用 Hermite-Padé dual vector 的 primitive 整數向量當 cofactor
  （跟真正的 cofactor 只差一個非零整數倍；所有下游量都先除掉 gcd，所以結果一樣）
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Literal, Optional, Tuple

from mpmath import iv

from .bipoly import BiPoly, apply_delta, delta_monomial_value
from .errors import HypothesisNotMet, InconsistencyError
from .exactnum import (
    DEFAULT_PRECISION,
    AlgebraicNumber,
    RealDR,
    field_degree_ratio,
    precision_context,
    to_interval,
)
from .feldman import apply_feldman_operator
from .hermite_pade import Method, hp_coefficients
from .linalg import gram_det, mat_vec, maximal_minors, primitive_integer_vector, signed_cofactors
from .numtheory import dmn, lcm_upto

logger = logging.getLogger("Interp")

Source = Literal["minors", "dual"]


# ========= M₀ ========= #

def column_index(k: int, ell: int, K: int) -> int:
    return ell * K + k


def columns(K: int, L: int) -> List[Tuple[int, int]]:
    """依 index 順序列出 (k, ℓ)。"""
    return [(k, ell) for ell in range(L) for k in range(K)]


def m0_entry(s: int, k: int, ell: int) -> int:
    if k > s:
        return 0
    return math.comb(s, k) * math.factorial(k) * ell ** (s - k)


def m0_matrix(K: int, L: int) -> List[List[int]]:
    S = K * L
    cols = columns(K, L)
    return [[m0_entry(s, k, ell) for (k, ell) in cols] for s in range(S - 1)]


@dataclass(frozen=True)
class InterpolationSystem:
    K: int
    L: int
    cofactors: Tuple[int, ...]
    minors: Optional[Tuple[int, ...]] = None
    source: Source = "minors"

    @property
    def S(self) -> int:
        return self.K * self.L

    @property
    def columns(self) -> List[Tuple[int, int]]:
        return columns(self.K, self.L)

    @cached_property
    def matrix(self) -> List[List[int]]:
        return m0_matrix(self.K, self.L)

    @cached_property
    def content(self) -> int:
        """gcd(cofactors)；minors 模式下就是 gcd(Δ)。"""
        return math.gcd(*self.cofactors)

    @cached_property
    def primitive(self) -> Tuple[int, ...]:
        g = self.content
        return tuple(c // g for c in self.cofactors)

    @property
    def ultrametric(self) -> Optional[Fraction]:
        """∏_p |M₀|_p = 1/gcd(Δ)；只有 minors 模式才知道。"""
        if self.minors is None:
            return None
        return Fraction(1, math.gcd(*self.minors))

    @classmethod
    def from_dual(cls, K: int, L: int, method: Method = "convolution") -> "InterpolationSystem":
        _check_shape(K, L)
        w = primitive_integer_vector(m0_orthogonal_vector(K, L, method))
        # 符號：讓最後一個分量為正（真正 cofactor 的最後一個分量是 Δ_{S−1}）
        if w[-1] < 0:
            w = [-x for x in w]
        if any(mat_vec(m0_matrix(K, L), w)):
            raise InconsistencyError(f"dual vector is not orthogonal to M0 (K={K}, L={L})")
        return cls(K=K, L=L, cofactors=tuple(w), minors=None, source="dual")


def _check_shape(K: int, L: int) -> None:
    if K < 1 or L < 1:
        raise ValueError(f"need K >= 1 and L >= 1, got K={K}, L={L}")


def build_m0(K: int, L: int) -> InterpolationSystem:
    """全部 maximal minors 用 fraction-free elimination；有非零 minor ⇔ rank = S−1。"""
    _check_shape(K, L)
    S = K * L
    if S == 1:
        minors = [1]
    else:
        minors = maximal_minors(m0_matrix(K, L))
    if not any(minors):
        raise InconsistencyError(f"rank(M0) < S-1 for K={K}, L={L}")
    cof = signed_cofactors(minors)
    logger.debug(f"built M0 for K={K}, L={L} from {S} minors")
    return InterpolationSystem(
        K=K,
        L=L,
        cofactors=tuple(int(c) for c in cof),
        minors=tuple(int(m) for m in minors),
        source="minors",
    )


# ========= M₀^⊥ ========= #

def m0_orthogonal_vector(K: int, L: int, method: Method = "lambda") -> List[Fraction]:
    """(p_{ℓ,k}/k!)，節點 x_ℓ = ℓ、參數全為 K；L = 1 時是 (0,…,0,1)。"""
    if L == 1:
        return [Fraction(0)] * (K - 1) + [Fraction(1)]
    hp = hp_coefficients(list(range(L)), [K] * L, method=method)
    v = [Fraction(0)] * (K * L)
    for k, ell in columns(K, L):
        v[column_index(k, ell, K)] = hp.p(ell, k) / math.factorial(k)
    return v


def m0_orthogonal(system: InterpolationSystem, method: Method = "lambda") -> List[Fraction]:
    v = m0_orthogonal_vector(system.K, system.L, method)
    if any(mat_vec(system.matrix, v)):
        raise InconsistencyError(f"M0 * v != 0 for K={system.K}, L={system.L}")
    return v


def is_proportional(u: List[Fraction] | Tuple[int, ...], v: List[Fraction] | Tuple[int, ...]) -> bool:
    """u, v 是否成比例（exact）。"""
    pu = primitive_integer_vector(u)
    pv = primitive_integer_vector(v)
    return pu == pv or pu == [-x for x in pv]


# ========= heights ========= #

@dataclass(frozen=True)
class HeightReport:
    """
    H(M₀) = sqrt(ΣΔ²)/gcd(Δ) 以及 dual vector 的 (Σw², gcd w)。

    minors 模式才有 sum_squares / gcd / gram_det；dual 欄位永遠有。
    """

    K: int
    L: int
    sum_squares: Optional[int]
    gcd: Optional[int]
    gram_det: Optional[int]
    dual_sum_squares: int
    dual_gcd: int
    archimedean: Optional[RealDR]
    ultrametric: Optional[Fraction]
    height_lower: RealDR
    height_upper: RealDR

    @property
    def duality_holds(self) -> Optional[bool]:
        """ΣΔ²·(gcd w)² == Σw²·(gcd Δ)²。"""
        if self.sum_squares is None or self.gcd is None:
            return None
        return self.sum_squares * self.dual_gcd**2 == self.dual_sum_squares * self.gcd**2

    @property
    def cauchy_binet_holds(self) -> Optional[bool]:
        if self.gram_det is None:
            return None
        return self.gram_det == self.sum_squares


def m0_height(system: InterpolationSystem, precision: int = DEFAULT_PRECISION) -> HeightReport:
    dual = primitive_integer_vector(m0_orthogonal_vector(system.K, system.L, "convolution"))
    dual_ss = sum(x * x for x in dual)
    dual_g = math.gcd(*dual)

    if system.minors is not None:
        ss = sum(m * m for m in system.minors)
        g = math.gcd(*system.minors)
        gram = int(gram_det(system.matrix)) if system.S > 1 else 1
    else:
        ss = g = gram = None

    with precision_context(precision):
        if ss is not None:
            arch = iv.sqrt(iv.mpf(ss))
            h = arch / g
            archimedean = RealDR.from_interval(arch, "up", precision)
        else:
            h = iv.sqrt(iv.mpf(dual_ss)) / dual_g
            archimedean = None
        return HeightReport(
            K=system.K,
            L=system.L,
            sum_squares=ss,
            gcd=g,
            gram_det=gram,
            dual_sum_squares=dual_ss,
            dual_gcd=dual_g,
            archimedean=archimedean,
            ultrametric=system.ultrametric,
            height_lower=RealDR.from_interval(h, "down", precision),
            height_upper=RealDR.from_interval(h, "up", precision),
        )


def m0_height_interval(system: InterpolationSystem) -> object:
    """H(M₀) 的 iv 區間（目前精度），由 primitive cofactor 向量算。"""
    return iv.sqrt(iv.mpf(sum(c * c for c in system.primitive)))


# ========= H(M₀) 上界 ========= #

def m0_height_bound_interval(K: int, L: int) -> object:
    """(√6/(16L))·2^{KL+L}·D_{K−1,L−1}·(√3·e·d_{L−1}·min(K,L)/(2√L))^{K−1}。"""
    base = iv.sqrt(iv.mpf(3)) * iv.exp(1) * lcm_upto(L - 1) * min(K, L) / (2 * iv.sqrt(iv.mpf(L)))
    return (
        iv.sqrt(iv.mpf(6))
        / (16 * L)
        * iv.mpf(2) ** (K * L + L)
        * dmn(K - 1, L - 1)
        * base ** (K - 1)
    )


@dataclass(frozen=True)
class M0HeightReport:
    """
    passed 比較的是證明中實際控制的 sup-norm 高度 max|w|（primitive dual vector）；
    euclidean_within_bound 另外回報 Cauchy-Binet 意義下的 H(M₀) 是否也在界內。
    """

    K: int
    L: int
    bound: RealDR
    sup_height: int
    euclidean_height: RealDR
    passed: bool
    euclidean_within_bound: bool


def check_prop310(K: int, L: int, precision: int = 128) -> M0HeightReport:
    if K < 1 or L < 2:
        raise ValueError("check_prop310 needs K >= 1 and L >= 2")
    system = InterpolationSystem.from_dual(K, L)
    sup = max(abs(c) for c in system.primitive)
    with precision_context(precision):
        bound = RealDR.from_interval(m0_height_bound_interval(K, L), "down", precision)
        euclid = RealDR.from_interval(m0_height_interval(system), "up", precision)
    return M0HeightReport(
        K=K,
        L=L,
        bound=bound,
        sup_height=sup,
        euclidean_height=euclid,
        passed=sup <= bound.value,
        euclidean_within_bound=euclid.value <= bound.value,
    )


# ========= H, F, μ ========= #

def h_polynomial(system: InterpolationSystem) -> BiPoly:
    """H(X,Y) = Σ cofactor_{k,ℓ}·X^kY^ℓ。"""
    return BiPoly(
        {(k, ell): c for (k, ell), c in zip(system.columns, system.cofactors)}
    )


def f_polynomial(system: InterpolationSystem, mu: int) -> BiPoly:
    return apply_delta(h_polynomial(system), mu)


def delta_h_value(
    system: InterpolationSystem, mu: int, alpha: AlgebraicNumber, beta: AlgebraicNumber
) -> AlgebraicNumber:
    """δ^μH(β,α) = Σ cofactor·δ^μ(X^kY^ℓ)(β,α)，在 ℚ(√d) 內 exact 計算。"""
    total = AlgebraicNumber(Fraction(0))
    for (k, ell), c in zip(system.columns, system.cofactors):
        if c:
            total = total + c * delta_monomial_value(k, ell, mu, beta, alpha)
    return total


@dataclass(frozen=True)
class EvaluationReport:
    K: int
    L: int
    mu: int
    alpha: AlgebraicNumber
    beta: AlgebraicNumber
    F: AlgebraicNumber
    content: int
    ultrametric: Optional[Fraction]
    source: Source

    @property
    def mu_exceeds_l_minus_2(self) -> bool:
        """μ = L−1：零點引理只保證 vanishing order ≤ L−1，這種情況確實會出現。"""
        return self.mu > self.L - 2


def find_mu(
    system: InterpolationSystem, alpha: AlgebraicNumber, beta: AlgebraicNumber
) -> EvaluationReport:
    """
    最小的 μ ≤ L−1 使 δ^μH(β,α) ≠ 0。

    例：K = L = 2 時 H = 2 + X − 2Y + XY，H(1, 3) = 0 而 δH(1, 3) = 1，所以 μ = L−1。
    """
    if alpha.is_zero:
        raise HypothesisNotMet("find_mu requires alpha != 0 (alpha = 0 is handled by the bound engine)")
    if beta.is_zero:
        raise HypothesisNotMet("find_mu requires beta != 0")
    if system.L < 2:
        raise HypothesisNotMet("find_mu requires L >= 2")
    field_degree_ratio(alpha, beta)
    for mu in range(system.L):
        value = delta_h_value(system, mu, alpha, beta)
        if not value.is_zero:
            report = EvaluationReport(
                K=system.K,
                L=system.L,
                mu=mu,
                alpha=alpha,
                beta=beta,
                F=value,
                content=system.content,
                ultrametric=system.ultrametric,
                source=system.source,
            )
            if report.mu_exceeds_l_minus_2:
                logger.info(f"mu = L-1 = {mu} at ({beta}, {alpha}), K={system.K}, L={system.L}")
            return report
    logger.error(f"no mu <= L-1 with nonzero delta^mu H at ({beta}, {alpha}), K={system.K}, L={system.L}")
    raise InconsistencyError(f"delta^mu H(beta, alpha) vanishes for all mu <= {system.L - 1}")


# ========= G₁, G₂, G_{β,α} ========= #

def g_polynomials(report: EvaluationReport, system: InterpolationSystem) -> Tuple[BiPoly, BiPoly]:
    """
    G₁ = d_μ^{K−1}·(1/gcd)·F_μ(δ)H，G₂ = (1/gcd)·δ^μH；兩者都必須是整係數。
    """
    h = h_polynomial(system)
    inv_g = Fraction(1, system.content)
    d_pow = lcm_upto(report.mu) ** (system.K - 1)
    g1 = apply_feldman_operator(h, report.mu).scale(d_pow * inv_g)
    g2 = apply_delta(h, report.mu).scale(inv_g)
    for name, poly in (("G1", g1), ("G2", g2)):
        if not poly.is_integral():
            logger.error(f"{name} has non-integer coefficients (K={system.K}, L={system.L}, mu={report.mu})")
            raise InconsistencyError(f"{name} is not an integer polynomial")
    lhs = g1.evaluate(report.beta, report.alpha) * math.factorial(report.mu)
    rhs = report.F * Fraction(d_pow, system.content)
    if lhs != rhs:
        raise InconsistencyError("G1(beta, alpha) * mu! != d_mu^(K-1) * F(beta, alpha) / gcd")
    return g1, g2


def g_factor(report: EvaluationReport) -> Fraction:
    """min(1, d_μ^{K−1}/μ!)/gcd。"""
    ratio = Fraction(lcm_upto(report.mu) ** (report.K - 1), math.factorial(report.mu))
    return min(Fraction(1), ratio) / report.content


def log_g_interval(report: EvaluationReport) -> object:
    """log G_{β,α} = log(min(1, d^{K−1}/μ!)/gcd) + ½·log|F|²（目前精度）。"""
    return iv.log(to_interval(g_factor(report))) + iv.log(to_interval(report.F.abs_squared)) / 2


def g_value(
    report: EvaluationReport,
    system: InterpolationSystem,
    precision: int = DEFAULT_PRECISION,
    check_polynomials: bool = True,
) -> RealDR:
    """G_{β,α}，向下捨入。"""
    if check_polynomials:
        g_polynomials(report, system)
    with precision_context(precision):
        value = to_interval(g_factor(report)) * iv.sqrt(to_interval(report.F.abs_squared))
        return RealDR.from_interval(value, "down", precision)


__all__ = [
    "Source",
    "column_index",
    "columns",
    "m0_entry",
    "m0_matrix",
    "InterpolationSystem",
    "build_m0",
    "m0_orthogonal_vector",
    "m0_orthogonal",
    "is_proportional",
    "HeightReport",
    "m0_height",
    "m0_height_interval",
    "m0_height_bound_interval",
    "M0HeightReport",
    "check_prop310",
    "h_polynomial",
    "f_polynomial",
    "delta_h_value",
    "EvaluationReport",
    "find_mu",
    "g_polynomials",
    "g_factor",
    "log_g_interval",
    "g_value",
]
