from __future__ import annotations

import json

import pytest

from skills.errors import (
    BoundRejected,
    HypothesisNotMet,
    InconsistencyError,
    NoCertificateFound,
    ParseError,
    error_kind,
)
from skills.settings import CONFIG_ENV, PRECISION_ENV, EngineSettings, SimpleSettingsStore


def test_defaults():
    settings = SimpleSettingsStore().get_settings()
    assert settings == EngineSettings()
    assert settings.precision_bits == 256
    assert (settings.search.max_K, settings.search.max_L) == (40, 12)


def test_config_file(settings_store):
    settings = settings_store.get_settings()
    assert settings.lemmas.trials == 100
    assert settings.search.denominator_bits == 20
    assert settings.certificates_dir.endswith("certs")


def test_config_from_env_and_missing_file(tmp_path, monkeypatch):
    config = tmp_path / "c.json"
    config.write_text(json.dumps({"precision_bits": 512}), encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV, str(config))
    assert SimpleSettingsStore().get_settings().precision_bits == 512
    assert SimpleSettingsStore(tmp_path / "absent.json").get_settings() == EngineSettings()


@pytest.mark.parametrize("raw, expected", [("384", 384), ("abc", 256), ("32", 256)])
def test_precision_env_override(monkeypatch, raw, expected):
    monkeypatch.setenv(PRECISION_ENV, raw)
    assert SimpleSettingsStore().get_settings().precision_bits == expected


def test_resolve_precision():
    store = SimpleSettingsStore()
    assert store.resolve_precision(None) == 256
    assert store.resolve_precision(128) == 128
    with pytest.raises(ValueError):
        store.resolve_precision(32)


def test_get_settings_returns_copy():
    store = SimpleSettingsStore()
    store.get_settings().search.max_K = 1
    assert store.get_settings().search.max_K == 40


@pytest.mark.parametrize(
    "exc, kind",
    [
        (ParseError("x"), "usage"),
        (ValueError("x"), "usage"),
        (HypothesisNotMet("x"), "rejected"),
        (BoundRejected("x"), "rejected"),
        (NoCertificateFound("x"), "rejected"),
        (InconsistencyError("x"), "internal"),
        (RuntimeError("x"), "internal"),
    ],
)
def test_error_kind(exc, kind):
    assert error_kind(exc) == kind
