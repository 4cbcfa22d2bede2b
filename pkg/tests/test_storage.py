from __future__ import annotations

import json

import pytest

from skills.errors import ParseError
from storage import BoundCertificate, CertificateRepository
from storage.models import CERTIFICATE_KEYS, DiagnosticReport


def test_certificate_json_roundtrip(certificate_3_1):
    text = certificate_3_1.to_json()
    data = json.loads(text)
    assert set(CERTIFICATE_KEYS) <= set(data)
    assert data["rounding"]["lhs"] == "down"
    assert not any(isinstance(v, float) for v in data.values())
    assert BoundCertificate.from_json(text) == certificate_3_1


def test_certificate_parse_errors(certificate_3_1):
    data = certificate_3_1.to_dict()
    del data["lhs"]
    with pytest.raises(ParseError, match="lhs"):
        BoundCertificate.from_dict(data)
    with pytest.raises(ParseError):
        BoundCertificate.from_json("{not json")
    with pytest.raises(ParseError):
        BoundCertificate.from_json("[]")
    bad = certificate_3_1.to_dict()
    bad["K"] = "many"
    with pytest.raises(ParseError):
        BoundCertificate.from_dict(bad)


def test_repository_crud_and_files(tmp_path, certificate_3_1):
    repo = CertificateRepository()
    repo.add(certificate_3_1)
    assert repo.get(certificate_3_1.key) is certificate_3_1
    assert repo.list_for("3", "1") == [certificate_3_1]
    assert repo.list_for("2", "1") == []

    path = repo.save(tmp_path / "nested" / "certs.json")
    other = CertificateRepository()
    assert other.load(path) == 1
    assert other.list_all() == [certificate_3_1]

    repo.delete(certificate_3_1.key)
    assert repo.list_all() == []


def test_write_one_read_one(cert_file, certificate_3_1):
    assert CertificateRepository.read_one(cert_file) == certificate_3_1
    repo = CertificateRepository()
    assert repo.load(cert_file) == 1


def test_load_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ParseError):
        CertificateRepository().load(path)


def test_diagnostic_report_roundtrip():
    report = DiagnosticReport(
        alpha="3",
        beta="1",
        K=2,
        L=3,
        E="2/1",
        mu=0,
        source="minors",
        log_height="1.5",
        log_g="0.69",
        lower="-3.2",
        upper="4.1",
        gap="-7.3",
        contradiction=False,
        lower_holds=True,
        upper_hypothesis_holds=False,
    )
    data = json.loads(report.to_json())
    assert DiagnosticReport.from_dict(data) == report
    with pytest.raises(ParseError):
        DiagnosticReport.from_dict({"alpha": "3"})
