# storage/repositories.py

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

from skills.errors import ParseError

from .models import BoundCertificate

logger = logging.getLogger("CertificateRepository")


class CertificateRepository:
    """
    管理 BoundCertificate 的簡易 Repository（in-memory + JSON 檔）。

    key 是 (alpha, beta, K, L, E)；同一組參數再 add 會覆蓋。
    """

    def __init__(self) -> None:
        self._items: Dict[str, BoundCertificate] = {}

    # ===== 基本 CRUD ===== #

    def add(self, cert: BoundCertificate) -> BoundCertificate:
        self._items[cert.key] = cert
        return cert

    def get(self, key: str) -> Optional[BoundCertificate]:
        return self._items.get(key)

    def delete(self, key: str) -> None:
        self._items.pop(key, None)

    # ===== 查詢方法 ===== #

    def list_all(self) -> List[BoundCertificate]:
        return list(self._items.values())

    def list_for(self, alpha: str, beta: str) -> List[BoundCertificate]:
        return [c for c in self._items.values() if c.alpha == alpha and c.beta == beta]

    # ===== 檔案 ===== #

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = [c.to_dict() for c in sorted(self._items.values(), key=lambda c: c.key)]
        path.write_text(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        logger.info(f"saved {len(data)} certificates to {path}")
        return path

    def load(self, path: str | Path) -> int:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError(f"{path} is not valid JSON: {e}") from e
        if isinstance(data, dict):
            data = [data]
        for item in data:
            self.add(BoundCertificate.from_dict(item))
        return len(data)

    @staticmethod
    def write_one(cert: BoundCertificate, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(cert.to_json(), encoding="utf-8")
        return path

    @staticmethod
    def read_one(path: str | Path) -> BoundCertificate:
        return BoundCertificate.from_json(Path(path).read_text(encoding="utf-8"))


__all__ = ["CertificateRepository"]
