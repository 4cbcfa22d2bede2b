from __future__ import annotations

import json

import pytest

from app.cli import EXIT_OK, EXIT_REJECTED, EXIT_USAGE, run
from storage import CertificateRepository


def test_corollary4(capsys):
    assert run(["corollary4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "25.0059" in out
    assert "Mahler" in out


def test_lemmas_plain_and_json(capsys):
    assert run(["lemmas", "--suite", "feldman"]) == EXIT_OK
    assert "[feldman] PASS" in capsys.readouterr().out
    assert run(["lemmas", "--suite", "numtheory", "--json"]) == EXIT_OK
    body = json.loads(capsys.readouterr().out)
    assert body["ok"] and body["data"]["suite"] == "numtheory"


def test_verify_ok_and_tampered(cert_file, tmp_path, capsys):
    assert run(["verify", "--cert", str(cert_file)]) == EXIT_OK
    assert "[verify] PASS" in capsys.readouterr().out

    data = json.loads(cert_file.read_text(encoding="utf-8"))
    data["lhs"] = "100000"
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data), encoding="utf-8")
    assert run(["verify", "--cert", str(tampered)]) == EXIT_REJECTED
    assert "lhs_reproduced" in capsys.readouterr().out


def test_verify_unreadable_certificate(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert run(["verify", "--cert", str(broken)]) == EXIT_USAGE
    assert run(["verify", "--cert", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_bound_with_explicit_parameters(certificate_3_1, tmp_path, capsys):
    c = certificate_3_1
    out = tmp_path / "out" / "cert.json"
    argv = ["bound", "--alpha", "3", "--beta", "1", "--K", str(c.K), "--L", str(c.L), "--E", c.E, "--out", str(out)]
    assert run(argv) == EXIT_OK
    text = capsys.readouterr().out
    assert f"log|e^beta - alpha| >= {c.log_eps_lower}" in text
    assert CertificateRepository.read_one(out).lhs == c.lhs


def test_bound_rejected_prints_breakdown(capsys):
    assert run(["bound", "--alpha", "3", "--beta", "1", "--K", "1", "--L", "2", "--E", "2"]) == EXIT_REJECTED
    assert "margin" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--alpha", "pi", "--beta", "1"],
        ["bound", "--alpha", "3", "--beta", "1", "--precision", "32"],
        ["bound", "--alpha", "3", "--beta", "1", "--max-K", "0"],
        ["hp-table", "--nodes", "0,0", "--params", "1,1"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_hp_table(capsys):
    assert run(["hp-table", "--nodes", "0,1", "--params", "1,1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "sigma = 2" in out
    assert "l=0 x=0 n=1: -1" in out
    assert "l=1 x=1 n=1: 1" in out


def test_diagnose_with_parameters(capsys):
    argv = ["diagnose", "--alpha", "3", "--beta", "1", "--K", "2", "--L", "3", "--E", "2", "--json"]
    assert run(argv) == EXIT_OK
    body = json.loads(capsys.readouterr().out)
    diagnostic = body["data"]["diagnostic"]
    assert diagnostic["K"] == 2 and diagnostic["source"] == "minors"
    assert diagnostic["lower_holds"] is True
