from __future__ import annotations

from typing import Literal

ErrorKind = Literal["usage", "rejected", "internal"]


class ExpBoundError(Exception):
    """整個專案共用的 base exception。"""

    kind: ErrorKind = "internal"


class ParseError(ExpBoundError, ValueError):
    """代數數 / 有理數 / 證書欄位格式錯誤。"""

    kind: ErrorKind = "usage"


class UnsupportedFieldError(ExpBoundError, ValueError):
    """兩個不同的虛二次域，或 d 不合法。"""

    kind: ErrorKind = "usage"


class HypothesisNotMet(ExpBoundError):
    """某個 lemma 的前提不成立（例如 ε < E^{-KL}、β ≠ 0、L ≥ 2）。"""

    kind: ErrorKind = "rejected"


class BoundRejected(ExpBoundError):
    """
    主不等式不成立。

    terms: 每一項 (名稱 → 向上捨入的十進位字串)，方便 CLI 印出 breakdown。
    """

    kind: ErrorKind = "rejected"

    def __init__(self, message: str, terms: dict[str, str] | None = None) -> None:
        super().__init__(message)
        self.terms: dict[str, str] = dict(terms or {})


class NoCertificateFound(BoundRejected):
    """在給定的 K, L 上限內找不到任何可行的 (K, L, E)。"""


class InconsistencyError(ExpBoundError, RuntimeError):
    """內部恆等式失敗：代表實作有 bug，不是輸入有問題。"""

    kind: ErrorKind = "internal"


def error_kind(exc: BaseException) -> ErrorKind:
    if isinstance(exc, ExpBoundError):
        return exc.kind
    if isinstance(exc, (ValueError, TypeError, KeyError)):
        return "usage"
    return "internal"


__all__ = [
    "ErrorKind",
    "ExpBoundError",
    "ParseError",
    "UnsupportedFieldError",
    "HypothesisNotMet",
    "BoundRejected",
    "NoCertificateFound",
    "InconsistencyError",
    "error_kind",
]
