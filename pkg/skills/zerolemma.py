"""
Zero lemma 的驗證工具：P ∈ ℚ[X,Y]，deg_X P ≤ D₀、deg_Y P ≤ D₁，
若 δ^σP(ζ_κ, η_κ) = 0 對所有 σ < S_κ 成立，則 S₁ + … + S_M ≤ (D₀+M)(D₁+1) − M。

這裡不重做證明，而是把它當 property 來測：
隨機多項式 + 隨機點，任何超過門檻的例子都是反例。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .bipoly import BiPoly, delta_once
from .errors import HypothesisNotMet
from .reports import CheckResult

logger = logging.getLogger("ZeroLemma")

Point = Tuple[Fraction, Fraction]

DEFAULT_CAP = 64


@dataclass(frozen=True)
class ZeroConfig:
    polynomial: BiPoly
    points: Tuple[Point, ...]
    D0: int
    D1: int
    multiplicities: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        pts = tuple((Fraction(z), Fraction(e)) for z, e in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("need at least one point")
        if self.polynomial.deg_x > self.D0 or self.polynomial.deg_y > self.D1:
            raise ValueError(
                f"degrees ({self.polynomial.deg_x}, {self.polynomial.deg_y}) exceed (D0, D1) = ({self.D0}, {self.D1})"
            )
        zetas = [z for z, _ in pts]
        if len(set(zetas)) != len(zetas):
            raise ValueError("zeta coordinates must be pairwise distinct")
        if any(e == 0 for _, e in pts):
            raise ValueError("eta coordinates must be nonzero")
        if self.multiplicities is not None:
            mult = tuple(int(s) for s in self.multiplicities)
            if len(mult) != len(pts) or any(s < 0 for s in mult):
                raise ValueError("one non-negative multiplicity per point is required")
            object.__setattr__(self, "multiplicities", mult)

    @property
    def M(self) -> int:
        return len(self.points)

    @property
    def threshold(self) -> int:
        return threshold(self.D0, self.D1, self.M)


def threshold(D0: int, D1: int, M: int) -> int:
    """(D₀+M)(D₁+1) − M。"""
    return (D0 + M) * (D1 + 1) - M


def vanishing_order(
    p: BiPoly,
    zeta: Fraction | int,
    eta: Fraction | int,
    cap: int = DEFAULT_CAP,
) -> int:
    """最小的 σ 使 δ^σP(ζ,η) ≠ 0；掃到 cap 都是 0 就回傳 cap + 1（代表 "≥ cap+1"）。"""
    if p.is_zero:
        raise HypothesisNotMet("vanishing order of the zero polynomial is undefined")
    if eta == 0:
        raise ValueError("eta must be nonzero")
    current = p
    for sigma in range(cap + 1):
        if current.evaluate(zeta, eta) != 0:
            return sigma
        current = delta_once(current)
    return cap + 1


@dataclass(frozen=True)
class ZeroLemmaVerdict:
    orders: Tuple[int, ...]
    threshold: int
    given_total: Optional[int]
    given_satisfied: Optional[bool]

    @property
    def actual_total(self) -> int:
        return sum(self.orders)

    @property
    def violated(self) -> bool:
        if self.actual_total > self.threshold:
            return True
        return bool(self.given_satisfied) and self.given_total is not None and self.given_total > self.threshold


def check_zero_lemma(config: ZeroConfig) -> ZeroLemmaVerdict:
    # 單點階數超過門檻就已經是反例，cap 取 threshold + 1 即可
    cap = config.threshold + 1
    orders = tuple(vanishing_order(config.polynomial, z, e, cap) for z, e in config.points)
    if config.multiplicities is None:
        given_total = given_ok = None
    else:
        given_total = sum(config.multiplicities)
        given_ok = all(o >= s for o, s in zip(orders, config.multiplicities))
    verdict = ZeroLemmaVerdict(
        orders=orders,
        threshold=config.threshold,
        given_total=given_total,
        given_satisfied=given_ok,
    )
    if verdict.violated:
        logger.error(f"zero lemma threshold exceeded: orders={orders}, threshold={config.threshold}")
    return verdict


def equal_multiplicity_bound(D0: int, D1: int, M: int) -> int:
    """S₁ = … = S_M = S 時最大的 S：M·S ≤ (D₀+M)(D₁+1) − M。"""
    if M < 1:
        raise ValueError("M must be positive")
    return threshold(D0, D1, M) // M


def optimality_example(D1: int, M: int) -> ZeroConfig:
    """P = (Y−1)^{D₁}，點 (μ, 1)，μ = 1..M；Σ S = M·D₁ 恰好等於門檻（D₀ = 0）。"""
    p = BiPoly.from_y_polynomial([-1, 1]) ** D1
    return ZeroConfig(
        polynomial=p,
        points=tuple((Fraction(mu), Fraction(1)) for mu in range(1, M + 1)),
        D0=0,
        D1=D1,
        multiplicities=tuple([D1] * M),
    )


# ========= randomized falsification ========= #

def _random_poly(rng: np.random.Generator, dx: int, dy: int) -> BiPoly:
    while True:
        coeffs = rng.integers(-3, 4, size=(dx + 1, dy + 1))
        p = BiPoly({(i, j): int(coeffs[i, j]) for i in range(dx + 1) for j in range(dy + 1)})
        if not p.is_zero:
            return p


def random_config(rng: np.random.Generator, max_degree: int = 4, max_points: int = 4) -> ZeroConfig:
    """
    一半是純隨機多項式；另一半是 (Y−η)^a·∏(X−ζ_κ)^{b_κ}·Q，
    刻意在點上製造高階零點。
    """
    D0 = int(rng.integers(0, max_degree + 1))
    D1 = int(rng.integers(0, max_degree + 1))
    M = int(rng.integers(1, max_points + 1))
    zetas = [Fraction(int(z)) for z in rng.choice(np.arange(-6, 7), size=M, replace=False)]
    if rng.random() < 0.5:
        etas = [Fraction(1)] * M
    else:
        etas = [Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])), int(rng.integers(1, 3))) for _ in range(M)]
    points = tuple(zip(zetas, etas))

    if rng.random() < 0.5:
        return ZeroConfig(_random_poly(rng, D0, D1), points, D0, D1)

    a = int(rng.integers(0, D1 + 1))
    p = BiPoly.from_y_polynomial([-etas[0], 1]) ** a
    budget = D0
    for z in zetas:
        if budget == 0:
            break
        b = int(rng.integers(0, budget + 1))
        p = p * BiPoly.from_x_polynomial([-z, 1]) ** b
        budget -= b
    p = p * _random_poly(rng, budget, D1 - a)
    return ZeroConfig(p, points, D0, D1)


def random_trials(
    trials: int = 1000,
    seed: int = 20240229,
    max_degree: int = 4,
    max_points: int = 4,
) -> CheckResult:
    rng = np.random.default_rng(seed)
    tight = 0
    for t in range(trials):
        config = random_config(rng, max_degree, max_points)
        verdict = check_zero_lemma(config)
        if verdict.violated:
            return CheckResult(
                "zero_lemma_random",
                False,
                t + 1,
                f"counterexample: P={dict(config.polynomial.terms)}, points={config.points}, orders={verdict.orders}",
            )
        if verdict.actual_total == verdict.threshold:
            tight += 1
    logger.debug(f"{trials} random zero-lemma configurations, {tight} tight")
    return CheckResult("zero_lemma_random", True, trials, f"seed={seed}, tight={tight}")


def check_optimality(max_D1: int = 4, max_M: int = 4) -> CheckResult:
    checked = 0
    for D1 in range(1, max_D1 + 1):
        for M in range(1, max_M + 1):
            verdict = check_zero_lemma(optimality_example(D1, M))
            checked += 1
            if verdict.violated or verdict.actual_total != verdict.threshold:
                return CheckResult("zero_lemma_optimality", False, checked, f"D1={D1}, M={M}, orders={verdict.orders}")
            if equal_multiplicity_bound(0, D1, M) != D1:
                return CheckResult("zero_lemma_optimality", False, checked, f"equal-multiplicity bound at D1={D1}, M={M}")
    return CheckResult("zero_lemma_optimality", True, checked)


__all__ = [
    "Point",
    "ZeroConfig",
    "threshold",
    "vanishing_order",
    "ZeroLemmaVerdict",
    "check_zero_lemma",
    "equal_multiplicity_bound",
    "optimality_example",
    "random_config",
    "random_trials",
    "check_optimality",
]
