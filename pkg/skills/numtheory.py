from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

from mpmath import iv

from .exactnum import DEFAULT_PRECISION, RealDR, Rounding, precision_context, upper


# ========= primes ========= #

class PrimeTable:
    """
    Eratosthenes sieve，保存 ≤ bound 的所有質數。

    只給 desk scale 用（bound 在 10⁴ 左右），不做 probabilistic primality。
    """

    def __init__(self, bound: int) -> None:
        self.bound = max(int(bound), 1)
        flags = bytearray([1]) * (self.bound + 1)
        flags[0] = 0
        flags[1] = 0
        for p in range(2, math.isqrt(self.bound) + 1):
            if flags[p]:
                flags[p * p :: p] = bytearray(len(range(p * p, self.bound + 1, p)))
        self.primes: Tuple[int, ...] = tuple(i for i, f in enumerate(flags) if f)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __contains__(self, n: int) -> bool:
        if n > self.bound:
            raise ValueError(f"{n} exceeds sieve bound {self.bound}")
        lo, hi = 0, len(self.primes)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.primes[mid] < n:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.primes) and self.primes[lo] == n

    def upto(self, n: int) -> Tuple[int, ...]:
        if n > self.bound:
            raise ValueError(f"{n} exceeds sieve bound {self.bound}")
        return tuple(p for p in self.primes if p <= n)

    @staticmethod
    def valuation(n: int, p: int) -> int:
        if n == 0:
            raise ValueError("valuation of 0 is infinite")
        n, v = abs(n), 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    @staticmethod
    def factorial_valuation(m: int, p: int) -> int:
        """Legendre：v_p(m!) = Σ_i ⌊m/p^i⌋。"""
        v, q = 0, p
        while q <= m:
            v += m // q
            q *= p
        return v


_table_lock = threading.Lock()
_table: PrimeTable = PrimeTable(1024)


def prime_table(bound: int) -> PrimeTable:
    """至少涵蓋 bound 的共用 PrimeTable（不夠大就重建，倍增）。"""
    global _table
    with _table_lock:
        if _table.bound < bound:
            _table = PrimeTable(max(bound, 2 * _table.bound))
        return _table


def primes_upto(n: int) -> Tuple[int, ...]:
    return prime_table(n).upto(n)


# ========= d_n, D_{m,n} ========= #

_lcm_values: List[int] = [1, 1]


def lcm_upto(n: int) -> int:
    """d_n = lcm(1, …, n)，d_0 = 1。"""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _table_lock:
        while len(_lcm_values) <= n:
            _lcm_values.append(math.lcm(_lcm_values[-1], len(_lcm_values)))
        return _lcm_values[n]


def dmn(m: int, n: int) -> int:
    """D_{m,n} = m! / ∏_{q ≤ n prime} q^{v_q(m!)}。"""
    if m < 0 or n < 0:
        raise ValueError("m, n must be non-negative")
    result = math.factorial(m)
    for q in primes_upto(min(n, m)):
        result //= q ** PrimeTable.factorial_valuation(m, q)
    return result


# ========= Stirling numbers of the first kind ========= #

_stirling_lock = threading.Lock()
_stirling_rows: List[List[int]] = [[1]]


def stirling_row(nu: int) -> Tuple[int, ...]:
    """s(ν, 0..ν)，用 s(ν+1, j) = s(ν, j−1) − ν·s(ν, j) 逐列 memoize。"""
    if nu < 0:
        raise ValueError("nu must be non-negative")
    with _stirling_lock:
        while len(_stirling_rows) <= nu:
            v = len(_stirling_rows) - 1
            prev = _stirling_rows[v]
            row = [0] * (v + 2)
            for j in range(v + 2):
                left = prev[j - 1] if j >= 1 else 0
                here = prev[j] if j <= v else 0
                row[j] = left - v * here
            _stirling_rows.append(row)
        return tuple(_stirling_rows[nu])


def stirling_first(nu: int, j: int) -> int:
    """signed s(ν, j)；j > ν 時回傳 0。"""
    if j < 0:
        raise ValueError("j must be non-negative")
    if j > nu:
        return 0
    return stirling_row(nu)[j]


# ========= Chebyshev ψ ========= #

def psi_interval(x: Union[int, Fraction, float]) -> object:
    """Σ_{p^k ≤ x} log p 的 iv 區間（目前精度）。"""
    n = math.floor(x)
    total = iv.mpf(0)
    for p in primes_upto(max(n, 1)):
        k, q = 0, p
        while q <= n:
            k += 1
            q *= p
        total += k * iv.log(iv.mpf(p))
    return total


def chebyshev_psi(
    x: Union[int, Fraction, float],
    rounding: Rounding = "nearest",
    precision: int = DEFAULT_PRECISION,
) -> RealDR:
    if x < 0:
        raise ValueError("x must be non-negative")
    with precision_context(precision):
        return RealDR.from_interval(psi_interval(x), rounding, precision)


# ========= binomial bounds ========= #

@dataclass
class BinomialBoundsReport:
    """
    三個 binomial 不等式的逐項檢查結果。

    - strict_pi:  C(n,k) < 2^n·√(2/(π(n+½)))      (n ≥ 0)
    - sqrt_n1:    C(n,k) ≤ 2^n/√(n+1)              (n ≥ 0)
    - three_quarter: C(n,k) ≤ 2^n·√(3/(4(n+1)))    (n ≥ 1)
    """

    n_max: int
    strict_pi: bool = True
    sqrt_n1: bool = True
    three_quarter: bool = True
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.strict_pi and self.sqrt_n1 and self.three_quarter


def check_binomial_bounds(n_max: int, precision: int = 128) -> BinomialBoundsReport:
    """
    全部轉成整數不等式（兩邊平方），只有含 π 的那條需要區間：
    c²·π·(2n+1) < 4^{n+1}，左邊取區間上端檢查。
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    report = BinomialBoundsReport(n_max=n_max)
    with precision_context(precision):
        pi = iv.pi
        for n in range(0, n_max + 1):
            four_n = 4**n
            # 中央二項式最大，但仍逐項檢查
            for k in range(n + 1):
                c = math.comb(n, k)
                c2 = c * c
                report.checked += 1
                if not c2 * (n + 1) <= four_n:
                    report.sqrt_n1 = False
                    report.violations.append(f"sqrt_n1 fails at n={n}, k={k}")
                if n >= 1 and not 4 * c2 * (n + 1) <= 3 * four_n:
                    report.three_quarter = False
                    report.violations.append(f"three_quarter fails at n={n}, k={k}")
                lhs = iv.mpf(c2 * (2 * n + 1)) * pi
                if not upper(lhs) < 4 * four_n:
                    report.strict_pi = False
                    report.violations.append(f"strict_pi fails at n={n}, k={k}")
    return report


__all__ = [
    "PrimeTable",
    "prime_table",
    "primes_upto",
    "lcm_upto",
    "dmn",
    "stirling_row",
    "stirling_first",
    "psi_interval",
    "chebyshev_psi",
    "BinomialBoundsReport",
    "check_binomial_bounds",
]
