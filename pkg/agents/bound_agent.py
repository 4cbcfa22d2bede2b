"""
agents/bound_agent.py

bound / verify / diagnose 三種模式都在這裡：
payload["mode"] 由 Orchestrator 依 request.type 填入。
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Protocol, runtime_checkable

from app.orchestrator import AgentResponse, BoundAgentProtocol
from skills.bound_engine import certify, search_best, verify_certificate
from skills.diagnostics import diagnose
from skills.errors import BoundRejected, ExpBoundError, ParseError
from skills.settings import EngineSettings
from storage import BoundCertificate, CertificateRepository

logger = logging.getLogger("BoundAgent")


# =========================
# 型別 & Protocol 定義
# =========================

@runtime_checkable
class SettingsStoreProtocol(Protocol):
    def get_settings(self) -> EngineSettings:
        ...

    def resolve_precision(self, requested: Optional[int]) -> int:
        ...


@dataclass
class BoundOptions:
    alpha: str
    beta: str
    K: Optional[int]
    L: Optional[int]
    E: Optional[str]
    max_K: int
    max_L: int
    precision: int
    logA: Optional[str]
    logB: Optional[str]
    out: Optional[str]
    snap_bits: int


# =========================
# BoundAgent 實作
# =========================

class BoundAgent(BoundAgentProtocol):

    def __init__(
        self,
        settings_store: SettingsStoreProtocol,
        repository: Optional[CertificateRepository] = None,
    ) -> None:
        self._settings_store = settings_store
        self._repository = repository or CertificateRepository()

    # ========= Orchestrator 入口 ========= #

    def handle(self, payload: Dict[str, Any]) -> AgentResponse:
        mode = payload.get("mode", "bound")
        try:
            if mode == "bound":
                return self._bound(self._normalize_payload(payload))
            if mode == "verify":
                return self._verify(payload)
            if mode == "diagnose":
                return self._diagnose(payload)
            return AgentResponse(ok=False, error=f"BoundAgent: unknown mode {mode!r}", error_kind="usage")
        except BoundRejected as e:
            return AgentResponse.failure(e, data={"terms": e.terms})
        except (ExpBoundError, ValueError, OSError) as e:
            return AgentResponse.failure(e)

    # ========= Payload 處理 ========= #

    def _normalize_payload(self, payload: Dict[str, Any]) -> BoundOptions:
        """
        整理 payload ＋ 預設值；alpha / beta 必填。
        """
        for key in ("alpha", "beta"):
            if payload.get(key) in (None, ""):
                raise ParseError(f"missing required field {key!r}")
        search = self._settings_store.get_settings().search

        def optional_int(key: str) -> Optional[int]:
            value = payload.get(key)
            return None if value is None else int(value)

        options = BoundOptions(
            alpha=str(payload["alpha"]),
            beta=str(payload["beta"]),
            K=optional_int("K"),
            L=optional_int("L"),
            E=None if payload.get("E") is None else str(payload["E"]),
            max_K=search.max_K if payload.get("max_K") is None else int(payload["max_K"]),
            max_L=search.max_L if payload.get("max_L") is None else int(payload["max_L"]),
            precision=self._settings_store.resolve_precision(payload.get("precision")),
            logA=payload.get("logA"),
            logB=payload.get("logB"),
            out=payload.get("out") or self._default_out(payload),
            snap_bits=int(search.denominator_bits),
        )
        given = [v is not None for v in (options.K, options.L, options.E)]
        if any(given) and not all(given):
            raise ValueError("K, L and E must be given together (or none of them to search)")
        if options.max_K < 1 or options.max_L < 1:
            raise ValueError("search caps must be >= 1")
        return options

    def _default_out(self, payload: Dict[str, Any]) -> Optional[str]:
        """save=True 但沒給 out：寫到 certificates_dir 底下。"""
        if not payload.get("save"):
            return None
        directory = Path(self._settings_store.get_settings().certificates_dir)
        slug = f"{payload['alpha']}_{payload['beta']}".replace("/", "over").replace("*", "")
        return str(directory / f"cert_{slug}.json")

    def _load_certificate(self, payload: Dict[str, Any]) -> BoundCertificate:
        if payload.get("certificate") is not None:
            return BoundCertificate.from_dict(payload["certificate"])
        if payload.get("cert"):
            try:
                return CertificateRepository.read_one(payload["cert"])
            except OSError as e:
                raise ParseError(f"cannot read certificate {payload['cert']}: {e}") from e
        raise ParseError("a certificate (inline or via 'cert' path) is required")

    # ========= 三種模式 ========= #

    def _bound(self, options: BoundOptions) -> AgentResponse:
        if options.K is not None:
            cert = certify(
                options.alpha,
                options.beta,
                options.K,
                options.L,
                options.E,
                precision=options.precision,
                logA=options.logA,
                logB=options.logB,
            )
        else:
            cert = search_best(
                options.alpha,
                options.beta,
                max_K=options.max_K,
                max_L=options.max_L,
                precision=options.precision,
                logA=options.logA,
                logB=options.logB,
                snap_bits=options.snap_bits,
            )
        self._repository.add(cert)

        data: Dict[str, Any] = {"certificate": cert.to_dict()}
        if options.out:
            path = CertificateRepository.write_one(cert, Path(options.out))
            logger.info(f"certificate written to {path}")
            data["path"] = str(path)
        return AgentResponse(ok=True, data=data)

    def _verify(self, payload: Dict[str, Any]) -> AgentResponse:
        cert = self._load_certificate(payload)
        precision = payload.get("precision")
        precision = None if precision is None else self._settings_store.resolve_precision(precision)
        report = verify_certificate(cert, precision)
        data = {"key": cert.key, "report": report.to_dict()}
        if not report.passed:
            failed = ", ".join(c.name for c in report.checks if not c.passed)
            return AgentResponse(
                ok=False,
                data=data,
                error=f"certificate verification failed: {failed}",
                error_kind="rejected",
            )
        return AgentResponse(ok=True, data=data)

    def _diagnose(self, payload: Dict[str, Any]) -> AgentResponse:
        if payload.get("certificate") is not None or payload.get("cert"):
            cert = self._load_certificate(payload)
            alpha, beta, K, L, E = cert.alpha, cert.beta, cert.K, cert.L, cert.E
        else:
            for key in ("alpha", "beta", "K", "L", "E"):
                if payload.get(key) in (None, ""):
                    raise ParseError(f"missing required field {key!r}")
            alpha, beta = str(payload["alpha"]), str(payload["beta"])
            K, L, E = int(payload["K"]), int(payload["L"]), str(payload["E"])
        report = diagnose(
            alpha,
            beta,
            K,
            L,
            E,
            precision=self._settings_store.resolve_precision(payload.get("precision")),
            mode=payload.get("system", "auto"),
        )
        return AgentResponse(ok=True, data={"diagnostic": report.to_dict()})
