from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Literal, Optional, Protocol, runtime_checkable

from skills.errors import ErrorKind, error_kind
from skills.exactnum import engine_section

logger = logging.getLogger("Orchestrator")


# ==== 型別定義 ==== #

RequestType = Literal["bound", "verify", "diagnose", "lemmas", "corollary4", "hp_table"]


@dataclass
class AgentRequest:
    """
    系統內部統一使用的請求格式。

    例子：
    AgentRequest(
        type="bound",
        payload={
            "alpha": "3",
            "beta": "1",
            "max_K": 40,
            "max_L": 12,
            "precision": 256,
        },
    )
    """
    type: RequestType
    payload: Dict[str, Any]


@dataclass
class AgentResponse:
    """
    系統內部統一使用的回應格式。

    - ok: 是否成功
    - data: 成功時的資料；失敗時也可能帶 breakdown / 驗證報告
    - error: 失敗時的人類可讀錯誤訊息
    - error_kind: "usage"（輸入錯）/ "rejected"（不等式或驗證沒過）/ "internal"（實作 bug）
    """
    ok: bool
    data: Any | None = None
    error: Optional[str] = None
    error_kind: Optional[ErrorKind] = None

    @classmethod
    def failure(cls, exc: BaseException, data: Any | None = None) -> "AgentResponse":
        return cls(ok=False, data=data, error=str(exc), error_kind=error_kind(exc))


# ==== Agent 介面定義（Protocol） ==== #

@runtime_checkable
class BoundAgentProtocol(Protocol):
    """agents/bound_agent.py：bound / verify / diagnose，payload["mode"] 決定哪一個。"""

    def handle(self, payload: Dict[str, Any]) -> AgentResponse:
        ...


@runtime_checkable
class LemmaAgentProtocol(Protocol):
    """agents/lemma_agent.py：lemma suites 與 Hermite-Padé 係數表。"""

    def handle(self, payload: Dict[str, Any]) -> AgentResponse:
        ...


@runtime_checkable
class CorollaryAgentProtocol(Protocol):
    """agents/corollary_agent.py：漸近常數 c。"""

    def handle(self, payload: Dict[str, Any]) -> AgentResponse:
        ...


# ==== Orchestrator ==== #

class Orchestrator:
    """
    負責：
    - 根據 request.type 把任務丟到對應的 Agent
    - 把任何漏出來的 exception 轉成 AgentResponse(ok=False, error_kind=...)
    - 對外提供統一的 handle(request) 介面
    """

    def __init__(
        self,
        bound_agent: BoundAgentProtocol,
        lemma_agent: LemmaAgentProtocol,
        corollary_agent: CorollaryAgentProtocol,
    ) -> None:
        self._bound_agent = bound_agent
        self._lemma_agent = lemma_agent
        self._corollary_agent = corollary_agent

    def handle(self, request: AgentRequest) -> AgentResponse:
        """
        系統統一入口；CLI 與 Web API 都只需要建好 AgentRequest 丟進來。
        Web API 的 route 跑在 threadpool 裡，一次只讓一個 request 動 mpmath 精度。
        """
        try:
            with engine_section():
                return self._dispatch(request)
        except Exception as e:
            logger.error(f"unhandled exception for {request.type}: {e}")
            return AgentResponse.failure(e)

    def _dispatch(self, request: AgentRequest) -> AgentResponse:
        if request.type in ("bound", "verify", "diagnose"):
            return self._bound_agent.handle({**request.payload, "mode": request.type})

        if request.type in ("lemmas", "hp_table"):
            return self._lemma_agent.handle({**request.payload, "mode": request.type})

        if request.type == "corollary4":
            return self._corollary_agent.handle(request.payload)

        return AgentResponse(
            ok=False,
            data=None,
            error=f"Unknown request type: {request.type}",
            error_kind="usage",
        )


# ==== 公用 Request Builder（給 API / CLI 共用） ==== #

def build_bound_request(
    *,
    alpha: str,
    beta: str,
    K: Optional[int] = None,
    L: Optional[int] = None,
    E: Optional[str] = None,
    max_K: Optional[int] = None,
    max_L: Optional[int] = None,
    precision: Optional[int] = None,
    logA: Optional[str] = None,
    logB: Optional[str] = None,
    out: Optional[str] = None,
    save: bool = False,
) -> AgentRequest:
    """
    K, L, E 三個都給 → 直接 certify 這組參數；否則在 max_K × max_L 內搜尋。
    """
    payload: Dict[str, Any] = {"alpha": alpha, "beta": beta}
    optional = {
        "K": K,
        "L": L,
        "E": E,
        "max_K": max_K,
        "max_L": max_L,
        "precision": precision,
        "logA": logA,
        "logB": logB,
        "out": out,
    }
    payload.update({k: v for k, v in optional.items() if v is not None})
    if save:
        payload["save"] = True
    return AgentRequest(type="bound", payload=payload)


def build_verify_request(
    *,
    certificate: Optional[Dict[str, Any]] = None,
    cert_path: Optional[str] = None,
    precision: Optional[int] = None,
) -> AgentRequest:
    payload: Dict[str, Any] = {}
    if certificate is not None:
        payload["certificate"] = certificate
    if cert_path is not None:
        payload["cert"] = cert_path
    if precision is not None:
        payload["precision"] = precision
    return AgentRequest(type="verify", payload=payload)
