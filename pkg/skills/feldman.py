from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .bipoly import BiPoly, apply_delta
from .numtheory import stirling_row


@dataclass(frozen=True)
class FeldmanPoly:
    """
    F_ν(z) = z(z−1)…(z−ν+1)/ν! = Σ_j λ_{j,ν} z^j，λ_{j,ν} = s(ν,j)/ν!。
    """

    nu: int
    coefficients: Tuple[Fraction, ...]

    def __call__(self, z: Fraction | int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * z + c
        return total

    def derivative(self, u: int) -> Tuple[Fraction, ...]:
        """F_ν^{(u)} 的係數。"""
        return tuple(
            c * math.perm(i, u) for i, c in enumerate(self.coefficients) if i >= u
        )


def feldman(nu: int) -> FeldmanPoly:
    if nu < 0:
        raise ValueError("nu must be non-negative")
    fact = math.factorial(nu)
    return FeldmanPoly(nu, tuple(Fraction(s, fact) for s in stirling_row(nu)))


def weighted_coeff_sum(nu: int) -> Fraction:
    """Σ_j j!·|λ_{j,ν}|，上界 2^ν。"""
    return sum(
        (math.factorial(j) * abs(c) for j, c in enumerate(feldman(nu).coefficients)),
        Fraction(0),
    )


def derivative_at_integer(nu: int, u: int, ell: int) -> Fraction:
    """F_ν^{(u)}(ℓ) = Σ_{i ≥ u} λ_{i,ν}·i!/(i−u)!·ℓ^{i−u}。"""
    if u < 0:
        raise ValueError("u must be non-negative")
    total = Fraction(0)
    for i, c in enumerate(feldman(nu).coefficients):
        if i >= u:
            total += c * math.perm(i, u) * ell ** (i - u)
    return total


def apply_feldman_operator(p: BiPoly, nu: int) -> BiPoly:
    """F_ν(δ)P = Σ_j λ_{j,ν}·δ^j P（ν = 0 時為 identity）。"""
    result = BiPoly()
    current = p
    for j, c in enumerate(feldman(nu).coefficients):
        if j:
            current = apply_delta(current, 1)
        if c:
            result = result + current.scale(c)
    return result


__all__ = [
    "FeldmanPoly",
    "feldman",
    "weighted_coeff_sum",
    "derivative_at_integer",
    "apply_feldman_operator",
]
