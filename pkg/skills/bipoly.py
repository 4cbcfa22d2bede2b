from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, Mapping, Tuple, Union

Monomial = Tuple[int, int]
Coefficient = Union[int, Fraction]


def _falling(k: int, j: int) -> int:
    """k!/(k−j)!（j > k 時為 0）。"""
    return math.perm(k, j) if j <= k else 0


@dataclass(frozen=True)
class BiPoly:
    """
    ℚ[X, Y] 的 sparse 多項式：(i, j) → X^i Y^j 的係數。

    不保存 0 係數。
    """

    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[Monomial, Fraction] = {}
        for (i, j), c in dict(self.terms).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)

    # ---- constructors ---- #

    @classmethod
    def monomial(cls, i: int, j: int, coeff: Coefficient = 1) -> "BiPoly":
        return cls({(i, j): Fraction(coeff)})

    @classmethod
    def constant(cls, c: Coefficient) -> "BiPoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def from_y_polynomial(cls, coeffs: Iterable[Coefficient]) -> "BiPoly":
        """Σ_j coeffs[j]·Y^j。"""
        return cls({(0, j): Fraction(c) for j, c in enumerate(coeffs)})

    @classmethod
    def from_x_polynomial(cls, coeffs: Iterable[Coefficient]) -> "BiPoly":
        return cls({(i, 0): Fraction(c) for i, c in enumerate(coeffs)})

    # ---- structure ---- #

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def length(self) -> Fraction:
        """L(P) = Σ |係數|。"""
        return sum((abs(c) for c in self.terms.values()), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # ---- arithmetic ---- #

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def scale(self, c: Coefficient) -> "BiPoly":
        c = Fraction(c)
        return BiPoly({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: Union["BiPoly", Coefficient]) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return self.scale(other)
        out: Dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = BiPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    # ---- evaluation ---- #

    def evaluate(self, x: Any, y: Any) -> Any:
        """
        在 (x, y) 取 exact 值；x, y 為 int、Fraction 或 AlgebraicNumber。
        X、Y 的次方各只算一次。
        """
        x_pows: Dict[int, Any] = {0: 1}
        y_pows: Dict[int, Any] = {0: 1}
        for i in range(1, self.deg_x + 1):
            x_pows[i] = x_pows[i - 1] * x
        for j in range(1, self.deg_y + 1):
            y_pows[j] = y_pows[j - 1] * y
        total: Any = 0
        for (i, j), c in self.terms.items():
            total = total + c * (x_pows[i] * y_pows[j])
        return total


# ========= δ = ∂/∂X + Y ∂/∂Y ========= #

def delta_once(p: BiPoly) -> BiPoly:
    out: Dict[Monomial, Fraction] = {}
    for (i, j), c in p.terms.items():
        if i:
            m = (i - 1, j)
            out[m] = out.get(m, Fraction(0)) + c * i
        if j:
            out[(i, j)] = out.get((i, j), Fraction(0)) + c * j
    return BiPoly(out)


def apply_delta(p: BiPoly, times: int) -> BiPoly:
    if times < 0:
        raise ValueError("times must be non-negative")
    for _ in range(times):
        p = delta_once(p)
    return p


def delta_monomial(k: int, ell: int, i: int) -> BiPoly:
    """
    δ^i(X^k Y^ℓ) = Y^ℓ Σ_j C(i,j)·k!/(k−j)!·ℓ^{i−j}·X^{k−j}（0⁰ = 1）。
    """
    return BiPoly(
        {
            (k - j, ell): math.comb(i, j) * _falling(k, j) * ell ** (i - j)
            for j in range(min(i, k) + 1)
        }
    )


def delta_monomial_value(k: int, ell: int, i: int, x: Any, y: Any) -> Any:
    """δ^i(X^kY^ℓ) 在 (x, y) 的值，不建 BiPoly。"""
    total: Any = 0
    x_pow: Any = 1
    # j 從 min(i,k) 往下，X 的次方 k−j 由小到大
    top = min(i, k)
    for _ in range(k - top):
        x_pow = x_pow * x
    for j in range(top, -1, -1):
        coeff = math.comb(i, j) * _falling(k, j) * ell ** (i - j)
        if coeff:
            total = total + coeff * x_pow
        x_pow = x_pow * x
    y_pow: Any = 1
    for _ in range(ell):
        y_pow = y_pow * y
    return total * y_pow


__all__ = [
    "Monomial",
    "Coefficient",
    "BiPoly",
    "delta_once",
    "apply_delta",
    "delta_monomial",
    "delta_monomial_value",
]
