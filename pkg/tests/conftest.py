from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from app.main import create_app
from skills.bound_engine import search_best
from skills.exactnum import AlgebraicNumber
from skills.settings import CONFIG_ENV, PRECISION_ENV, SimpleSettingsStore
from storage import BoundCertificate, CertificateRepository


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    # 本機的 EXPBOUND_* 不能影響測試
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    monkeypatch.delenv(PRECISION_ENV, raising=False)


@pytest.fixture(scope="session")
def certificate_3_1() -> BoundCertificate:
    """α = 3、β = 1 在預設上限 (40, 12) 內的最佳證書；整個 session 只搜一次。"""
    return search_best("3", "1", max_K=40, max_L=12, precision=256)


@pytest.fixture
def cert_file(tmp_path: Path, certificate_3_1: BoundCertificate) -> Path:
    return CertificateRepository.write_one(certificate_3_1, tmp_path / "cert.json")


@pytest.fixture
def settings_store(tmp_path: Path) -> SimpleSettingsStore:
    config = tmp_path / "engine_config.json"
    config.write_text(
        json.dumps(
            {
                "precision_bits": 256,
                "search": {"max_K": 40, "max_L": 12, "denominator_bits": 20},
                "lemmas": {"trials": 100, "seed": 7},
                "certificates_dir": str(tmp_path / "certs"),
            }
        ),
        encoding="utf-8",
    )
    return SimpleSettingsStore(config)


@pytest.fixture
def orchestrator(settings_store: SimpleSettingsStore):
    return create_app(settings_store)


@pytest.fixture
def gaussian():
    def make(a, b) -> AlgebraicNumber:
        return AlgebraicNumber(Fraction(a), Fraction(b), -1)

    return make
