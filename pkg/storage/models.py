from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Literal

from skills.errors import ParseError

Rounding = Literal["down", "up", "nearest"]

CERTIFICATE_KEYS = (
    "alpha",
    "beta",
    "D",
    "logA",
    "logB",
    "K",
    "L",
    "E",
    "lhs",
    "rhs",
    "log_eps_lower",
    "precision_bits",
    "version",
)


# ========= BoundCertificate：|e^β − α| ≥ E^{−KL} 的證書 ========= #

@dataclass
class BoundCertificate:
    """
    一張可以被獨立重算的證書。

    欄位（數值一律是十進位字串，捨入方向記在 ROUNDING）：
    - alpha / beta     : 代數數的正規文字形式（p/q 或 a+b*sqrt(d)）
    - D                : [ℚ(α,β):ℚ]/[ℝ(α,β):ℝ]
    - logA / logB      : 使用的 log𝒜、logℬ（向上）
    - K / L            : 整數參數
    - E                : 有理數字串 "p/q"
    - lhs              : KL·log E（向下）
    - rhs              : 主不等式右邊全部（向上）
    - log_eps_lower    : −KL·log E（向下），結論 log|e^β − α| ≥ 這個值
    - terms            : rhs 各項（向上），給人看的
    """

    ROUNDING = {
        "logA": "up",
        "logB": "up",
        "lhs": "down",
        "rhs": "up",
        "log_eps_lower": "down",
        "terms": "up",
    }

    alpha: str
    beta: str
    D: int
    logA: str
    logB: str
    K: int
    L: int
    E: str
    lhs: str
    rhs: str
    log_eps_lower: str
    precision_bits: int
    version: str
    terms: Dict[str, str] = field(default_factory=dict)

    @property
    def key(self) -> str:
        return f"{self.alpha}|{self.beta}|K={self.K}|L={self.L}|E={self.E}"

    @property
    def KL(self) -> int:
        return self.K * self.L

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["rounding"] = dict(self.ROUNDING)
        return data

    def to_json(self) -> str:
        """canonical JSON：key 排序、indent 2、沒有 float。"""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoundCertificate":
        missing = [k for k in CERTIFICATE_KEYS if k not in data]
        if missing:
            raise ParseError(f"certificate is missing keys: {', '.join(missing)}")
        try:
            return cls(
                alpha=str(data["alpha"]),
                beta=str(data["beta"]),
                D=int(data["D"]),
                logA=str(data["logA"]),
                logB=str(data["logB"]),
                K=int(data["K"]),
                L=int(data["L"]),
                E=str(data["E"]),
                lhs=str(data["lhs"]),
                rhs=str(data["rhs"]),
                log_eps_lower=str(data["log_eps_lower"]),
                precision_bits=int(data["precision_bits"]),
                version=str(data["version"]),
                terms={str(k): str(v) for k, v in (data.get("terms") or {}).items()},
            )
        except (TypeError, ValueError) as e:
            raise ParseError(f"malformed certificate field: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "BoundCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"certificate is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ParseError("certificate JSON must be an object")
        return cls.from_dict(data)


# ========= DiagnosticReport：log G 上下界的對照 ========= #

@dataclass
class DiagnosticReport:
    """
    log G_{β,α} 的下界（Liouville 型）與上界（解析估計）。

    - contradiction      : upper < lower，也就是證明中的矛盾確實出現
    - upper_hypothesis_holds : ε < E^{−KL} 是否真的成立（通常不成立，這是假設）
    - lengths            : L(G₁)、L(G₂) 與其上界
    - mu_exceeds_l_minus_2 : μ = L−1（零點引理允許的最大值）
    """

    ROUNDING = {
        "log_g": "nearest",
        "lower": "down",
        "upper": "up",
        "gap": "down",
        "log_height": "up",
        "lengths": "up",
    }

    alpha: str
    beta: str
    K: int
    L: int
    E: str
    mu: int
    source: str
    log_height: str
    log_g: str
    lower: str
    upper: str
    gap: str
    contradiction: bool
    lower_holds: bool
    upper_hypothesis_holds: bool
    lengths: Dict[str, str] = field(default_factory=dict)
    mu_exceeds_l_minus_2: bool = False

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["rounding"] = dict(self.ROUNDING)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DiagnosticReport":
        fields = {k: v for k, v in data.items() if k != "rounding"}
        try:
            return cls(**fields)
        except TypeError as e:
            raise ParseError(f"malformed diagnostic report: {e}") from e


__all__ = [
    "Rounding",
    "CERTIFICATE_KEYS",
    "BoundCertificate",
    "DiagnosticReport",
]
