"""
Type-I Hermite-Padé approximants of e^{x_0 z}, …, e^{x_m z}。

P_ℓ(z) = Σ_k p_{ℓ,k} z^k/k!，deg P_ℓ = n_ℓ − 1，
R(z) = Σ_ℓ P_ℓ(z) e^{x_ℓ z} 在 0 的消失階數 ≥ σ − 1。

係數用 residue 的 closed form：

    p_{ℓ,k} = Σ_{γ ∈ Λ(ℓ,k)} ∏_{p≠ℓ} (−1)^{γ_p} C(γ_p+n_p−1, n_p−1) / (x_ℓ−x_p)^{γ_p+n_p}

Λ(ℓ,k) 是 n_ℓ−k−1 拆成 m 個非負整數 (γ_p)_{p≠ℓ} 的所有方式。
"method='convolution'" 把同一個和寫成 m 個 power series 的 Cauchy product，
結果完全相同，給大系統用。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Literal, Sequence, Tuple

from mpmath import iv

from .errors import InconsistencyError
from .exactnum import lower, precision_context
from .linalg import bareiss_det
from .reports import CheckResult

Method = Literal["lambda", "convolution"]


# ========= Λ(ℓ,k) ========= #

def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """total 拆成 parts 個非負整數，lexicographic 順序。"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class MultiIndexSet:
    ell: int
    k: int
    others: Tuple[int, ...]
    tuples: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.tuples)


def enumerate_lambda(ell: int, k: int, params: Sequence[int]) -> MultiIndexSet:
    n_ell = params[ell]
    if not 0 <= k <= n_ell - 1:
        raise ValueError(f"k must be in [0, {n_ell - 1}], got {k}")
    others = tuple(p for p in range(len(params)) if p != ell)
    return MultiIndexSet(
        ell=ell,
        k=k,
        others=others,
        tuples=tuple(compositions(n_ell - k - 1, len(others))),
    )


# ========= HPSystem ========= #

@dataclass(frozen=True)
class HPSystem:
    nodes: Tuple[Fraction, ...]
    params: Tuple[int, ...]
    coefficients: Tuple[Tuple[Fraction, ...], ...]

    @property
    def m(self) -> int:
        return len(self.nodes) - 1

    @property
    def sigma(self) -> int:
        return sum(self.params)

    def p(self, ell: int, k: int) -> Fraction:
        return self.coefficients[ell][k]

    def polynomial(self, ell: int) -> Tuple[Fraction, ...]:
        """P_ℓ 的 z^k 係數 p_{ℓ,k}/k!。"""
        return tuple(c / math.factorial(k) for k, c in enumerate(self.coefficients[ell]))

    def taylor_coefficient(self, s: int) -> Fraction:
        """R(z) 的 z^s 係數：Σ_ℓ Σ_{k≤s} (p_{ℓ,k}/k!)·x_ℓ^{s−k}/(s−k)!。"""
        total = Fraction(0)
        for x, poly in zip(self.nodes, (self.polynomial(l) for l in range(self.m + 1))):
            for k, c in enumerate(poly):
                if k > s:
                    break
                total += c * x ** (s - k) / math.factorial(s - k)
        return total


def _validate(nodes: Sequence[Fraction], params: Sequence[int]) -> None:
    if len(nodes) != len(params) or len(nodes) < 2:
        raise ValueError("need at least two nodes and one parameter per node")
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"nodes must be pairwise distinct: {list(map(str, nodes))}")
    if any(n < 1 for n in params):
        raise ValueError("parameters n_l must be positive")


def _coefficient_by_lambda(
    nodes: Sequence[Fraction], params: Sequence[int], ell: int, k: int
) -> Fraction:
    lam = enumerate_lambda(ell, k, params)
    total = Fraction(0)
    for gamma in lam:
        term = Fraction(1)
        for g, p in zip(gamma, lam.others):
            n_p = params[p]
            term *= (-1) ** g * math.comb(g + n_p - 1, n_p - 1) / (nodes[ell] - nodes[p]) ** (g + n_p)
        total += term
    return total


def _coefficients_by_convolution(
    nodes: Sequence[Fraction], params: Sequence[int], ell: int
) -> List[Fraction]:
    n_ell = params[ell]
    series = [Fraction(1)] + [Fraction(0)] * (n_ell - 1)
    for p in range(len(nodes)):
        if p == ell:
            continue
        n_p, diff = params[p], nodes[ell] - nodes[p]
        factor = [
            Fraction((-1) ** g * math.comb(g + n_p - 1, n_p - 1)) / diff ** (g + n_p)
            for g in range(n_ell)
        ]
        series = [
            sum((series[i] * factor[t - i] for i in range(t + 1)), Fraction(0))
            for t in range(n_ell)
        ]
    # p_{ℓ,k} 是 ζ^{n_ℓ−1−k} 的係數
    return [series[n_ell - 1 - k] for k in range(n_ell)]


def hp_coefficients(
    nodes: Sequence[Fraction | int],
    params: Sequence[int],
    method: Method = "lambda",
) -> HPSystem:
    nodes_q = tuple(Fraction(x) for x in nodes)
    params_t = tuple(int(n) for n in params)
    _validate(nodes_q, params_t)
    if method == "lambda":
        table = tuple(
            tuple(_coefficient_by_lambda(nodes_q, params_t, ell, k) for k in range(n))
            for ell, n in enumerate(params_t)
        )
    elif method == "convolution":
        table = tuple(
            tuple(_coefficients_by_convolution(nodes_q, params_t, ell))
            for ell in range(len(params_t))
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    return HPSystem(nodes=nodes_q, params=params_t, coefficients=table)


def remainder_order(system: HPSystem, order_to_check: int) -> int:
    """
    掃 R(z) 的 Taylor 係數直到 order_to_check；
    全部為 0 時回傳 order_to_check + 1（代表 "≥"）。
    """
    if order_to_check < system.sigma - 1:
        raise ValueError(
            f"order_to_check={order_to_check} is below sigma-1={system.sigma - 1}; scan inconclusive"
        )
    for s in range(order_to_check + 1):
        if system.taylor_coefficient(s) != 0:
            return s
    return order_to_check + 1


# ========= generalized Vandermonde ========= #

def generalized_vandermonde_matrix(
    nodes: Sequence[Fraction | int], params: Sequence[int]
) -> List[List[Fraction]]:
    """列 (ℓ,k)（ℓ-major），欄 s = 0..σ−1，元素 C(s,k)·x_ℓ^{s−k}。"""
    nodes_q = [Fraction(x) for x in nodes]
    sigma = sum(params)
    rows: List[List[Fraction]] = []
    for x, n in zip(nodes_q, params):
        for k in range(n):
            rows.append(
                [Fraction(math.comb(s, k)) * x ** (s - k) if s >= k else Fraction(0) for s in range(sigma)]
            )
    return rows


def vandermonde_product(nodes: Sequence[Fraction | int], params: Sequence[int]) -> Fraction:
    nodes_q = [Fraction(x) for x in nodes]
    result = Fraction(1)
    for l in range(len(nodes_q)):
        for k in range(l):
            result *= (nodes_q[l] - nodes_q[k]) ** (params[l] * params[k])
    return result


def generalized_vandermonde(nodes: Sequence[Fraction | int], params: Sequence[int]) -> Fraction:
    """fraction-free 行列式，並要求等於 ∏_{k<ℓ}(x_ℓ−x_k)^{n_ℓ n_k}。"""
    det = Fraction(bareiss_det(generalized_vandermonde_matrix(nodes, params)))
    expected = vandermonde_product(nodes, params)
    if det != expected:
        raise InconsistencyError(f"generalized Vandermonde mismatch: det={det}, product={expected}")
    return det


# ========= Λ(ℓ,k) 大小與二項式乘積 ========= #

def check_lambda_size(K: int, L: int) -> CheckResult:
    """
    等參數 n_ℓ = K、L 個節點：
    |Λ(ℓ,k)| = C(K−k−1+L−2, L−2) 且 |Λ(ℓ,k)| ≤ 2^{K+L−3}·√(2/L)（平方後比較）。
    """
    params = [K] * L
    checked = 0
    for ell in range(L):
        for k in range(K):
            size = len(enumerate_lambda(ell, k, params))
            checked += 1
            if size != math.comb(K - k - 1 + L - 2, L - 2):
                return CheckResult("lambda_size", False, checked, f"cardinality mismatch at l={ell}, k={k}")
            if size * size * L > 2 * 4 ** (K + L - 3):
                return CheckResult("lambda_size", False, checked, f"size bound fails at l={ell}, k={k}")
    return CheckResult("lambda_size", True, checked, f"K={K}, L={L}")


def check_binomial_product(K: int, L: int, precision: int = 64) -> CheckResult:
    """∏_{p≠ℓ} C(γ_p+K−1, K−1) ≤ (e·min(K,L))^{K−1}，右邊取區間下端。"""
    params = [K] * L
    with precision_context(precision):
        bound = lower((iv.exp(1) * min(K, L)) ** (K - 1))
    checked = 0
    for ell in range(L):
        for k in range(K):
            for gamma in enumerate_lambda(ell, k, params):
                prod = math.prod(math.comb(g + K - 1, K - 1) for g in gamma)
                checked += 1
                if prod > bound:
                    return CheckResult("binomial_product", False, checked, f"fails at l={ell}, k={k}, gamma={gamma}")
    return CheckResult("binomial_product", True, checked, f"K={K}, L={L}")


__all__ = [
    "Method",
    "compositions",
    "MultiIndexSet",
    "enumerate_lambda",
    "HPSystem",
    "hp_coefficients",
    "remainder_order",
    "generalized_vandermonde_matrix",
    "vandermonde_product",
    "generalized_vandermonde",
    "check_lambda_size",
    "check_binomial_product",
]
