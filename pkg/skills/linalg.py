"""
Exact linear algebra over ℤ / ℚ：Bareiss fraction-free elimination。

矩陣一律用 List[List[int]] / List[List[Fraction]]（row-major）。
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Matrix = Sequence[Sequence[Scalar]]


def _to_integer_rows(matrix: Matrix) -> Tuple[List[List[int]], int]:
    """每列乘上分母的 lcm 變成整數列；回傳 (整數矩陣, 各列倍數的乘積)。"""
    rows: List[List[int]] = []
    scale = 1
    for row in matrix:
        den = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(Fraction(x) * den) for x in row])
        scale *= den
    return rows, scale


def bareiss_det(matrix: Matrix) -> Scalar:
    """
    方陣行列式。整數輸入全程用 exact division（//），
    有理數輸入先把每列化成整數再除回去。
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    rational = any(isinstance(x, Fraction) and x.denominator != 1 for row in matrix for x in row)
    a, scale = _to_integer_rows(matrix)

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0) if rational else 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    det = sign * a[n - 1][n - 1]
    if rational:
        return Fraction(det, scale)
    return det // scale


def rank(matrix: Matrix) -> int:
    """fraction-free row echelon 的 rank。"""
    a, _ = _to_integer_rows(matrix)
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        arc = a[r][c]
        for i in range(r + 1, n_rows):
            aic = a[i][c]
            for j in range(c + 1, n_cols):
                a[i][j] = (a[i][j] * arc - aic * a[r][j]) // prev
            a[i][c] = 0
        prev = arc
        r += 1
        if r == n_rows:
            break
    return r


def maximal_minors(matrix: Matrix) -> List[Scalar]:
    """(n−1)×n 矩陣：刪掉第 c 欄後的行列式 Δ_c，c = 0..n−1。"""
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else n_rows + 1
    if n_cols != n_rows + 1:
        raise ValueError("expected an (n-1) x n matrix")
    return [
        bareiss_det([list(row[:c]) + list(row[c + 1 :]) for row in matrix])
        for c in range(n_cols)
    ]


def signed_cofactors(minors: Sequence[Scalar]) -> List[Scalar]:
    """
    在最後補一列 (X_0, …, X_{n−1}) 後，沿最後一列展開的餘因子：
    cof_c = (−1)^{(n−1)+c} Δ_c。
    """
    n = len(minors)
    return [(-1) ** ((n - 1) + c) * m for c, m in enumerate(minors)]


def mat_vec(matrix: Matrix, vector: Sequence[Scalar]) -> List[Scalar]:
    return [sum(x * v for x, v in zip(row, vector)) for row in matrix]


def gram_det(matrix: Matrix) -> Scalar:
    """det(M·Mᵀ)；Cauchy-Binet：等於 Σ Δ_I²。"""
    gram = [[sum(x * y for x, y in zip(r1, r2)) for r2 in matrix] for r1 in matrix]
    return bareiss_det(gram)


def primitive_integer_vector(vector: Sequence[Scalar]) -> List[int]:
    """把有理向量乘上分母 lcm、再除以 gcd，得到 primitive 整數向量（保持方向）。"""
    fracs = [Fraction(x) for x in vector]
    den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * den) for f in fracs]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [x // g for x in ints]


__all__ = [
    "Scalar",
    "Matrix",
    "bareiss_det",
    "rank",
    "maximal_minors",
    "signed_cofactors",
    "mat_vec",
    "gram_det",
    "primitive_integer_vector",
]
