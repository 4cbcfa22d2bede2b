from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger("Settings")

CONFIG_ENV = "EXPBOUND_CONFIG"
PRECISION_ENV = "EXPBOUND_PRECISION"

MIN_PRECISION = 64


@dataclass
class SearchSettings:
    max_K: int = 40
    max_L: int = 12
    denominator_bits: int = 20


@dataclass
class LemmaSettings:
    trials: int = 1000
    seed: int = 20240229


@dataclass
class EngineSettings:
    """
    引擎層的預設值。

    全部都有 in-code 預設；JSON 檔與環境變數只是覆蓋用。
    明確傳進 function 的參數永遠優先於這裡的設定。
    """

    precision_bits: int = 256
    search: SearchSettings = field(default_factory=SearchSettings)
    lemmas: LemmaSettings = field(default_factory=LemmaSettings)
    certificates_dir: str = "output"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EngineSettings":
        search = SearchSettings(**data.get("search", {}))
        lemmas = LemmaSettings(**data.get("lemmas", {}))
        return cls(
            precision_bits=int(data.get("precision_bits", 256)),
            search=search,
            lemmas=lemmas,
            certificates_dir=str(data.get("certificates_dir", "output")),
        )


class SimpleSettingsStore:
    """
    管理 EngineSettings：

    1. in-code 預設
    2. 若有設定 EXPBOUND_CONFIG → 讀那個 JSON 檔覆蓋
    3. 若有設定 EXPBOUND_PRECISION → 覆蓋 precision_bits
    """

    def __init__(self, config_path: Optional[str | Path] = None) -> None:
        path = config_path or os.getenv(CONFIG_ENV)
        self._settings = self._load(Path(path)) if path else EngineSettings()
        self._apply_env_overrides()

    @staticmethod
    def _load(path: Path) -> EngineSettings:
        if not path.exists():
            logger.warning(f"config file not found: {path}, using defaults")
            return EngineSettings()
        with path.open("r", encoding="utf-8") as f:
            return EngineSettings.from_dict(json.load(f))

    def _apply_env_overrides(self) -> None:
        raw = os.getenv(PRECISION_ENV)
        if raw is None:
            return
        try:
            bits = int(raw)
        except ValueError:
            logger.warning(f"{PRECISION_ENV}={raw!r} is not an integer, ignored")
            return
        if bits < MIN_PRECISION:
            logger.warning(f"{PRECISION_ENV}={bits} below {MIN_PRECISION}, ignored")
            return
        self._settings.precision_bits = bits

    # ====== agents 會呼叫的介面 ====== #

    def get_settings(self) -> EngineSettings:
        # 回傳 copy，避免外部改到內部狀態
        return EngineSettings.from_dict(self._settings.to_dict())

    def resolve_precision(self, requested: Optional[int]) -> int:
        bits = self._settings.precision_bits if requested is None else int(requested)
        if bits < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION} bits, got {bits}")
        return bits


__all__ = [
    "CONFIG_ENV",
    "PRECISION_ENV",
    "MIN_PRECISION",
    "SearchSettings",
    "LemmaSettings",
    "EngineSettings",
    "SimpleSettingsStore",
]
