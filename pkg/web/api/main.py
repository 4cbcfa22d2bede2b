from __future__ import annotations

import logging
from typing import List, Optional

from fastapi import FastAPI, Depends, HTTPException, Query

from app import AgentRequest, AgentResponse, RequestType
from .deps import get_orchestrator
from .schemas import (
    BoundRequest,
    BoundResponse,
    CorollaryResponse,
    DiagnoseRequest,
    DiagnoseResponse,
    HPTableRequest,
    HPTableResponse,
    LemmaRequest,
    LemmaResponse,
    VerifyRequest,
    VerifyResponse,
)

logger = logging.getLogger("ExpBoundAPI")

app = FastAPI(title="expbound API")

# error_kind → HTTP status
STATUS_BY_KIND = {
    "usage": 400,
    "rejected": 422,
    "internal": 500,
}


def _dispatch(orchestrator, type_: RequestType, payload: dict) -> dict:
    res: AgentResponse = orchestrator.handle(AgentRequest(type=type_, payload=payload))
    if not res.ok:
        status = STATUS_BY_KIND.get(res.error_kind or "internal", 500)
        logger.info(f"{type_} -> {status}: {res.error}")
        raise HTTPException(
            status_code=status,
            detail={"error": res.error, "error_kind": res.error_kind, "data": res.data},
        )
    return res.data


# ==== API routes ====

@app.get("/api/health")
def health():
    return {"status": "ok"}


@app.post("/api/bound", response_model=BoundResponse)
def bound(
    body: BoundRequest,
    orchestrator=Depends(get_orchestrator),
):
    data = _dispatch(orchestrator, "bound", body.model_dump(exclude_none=True))
    return BoundResponse(certificate=data["certificate"])


@app.post("/api/verify", response_model=VerifyResponse)
def verify(
    body: VerifyRequest,
    orchestrator=Depends(get_orchestrator),
):
    data = _dispatch(orchestrator, "verify", body.model_dump(exclude_none=True))
    return VerifyResponse(**data)


@app.post("/api/diagnose", response_model=DiagnoseResponse)
def diagnose(
    body: DiagnoseRequest,
    orchestrator=Depends(get_orchestrator),
):
    data = _dispatch(orchestrator, "diagnose", body.model_dump(exclude_none=True))
    return DiagnoseResponse(**data)


@app.post("/api/lemmas", response_model=LemmaResponse)
def lemmas(
    body: LemmaRequest,
    orchestrator=Depends(get_orchestrator),
):
    data = _dispatch(orchestrator, "lemmas", body.model_dump(exclude_none=True))
    return LemmaResponse(**data)


@app.post("/api/hp-table", response_model=HPTableResponse)
def hp_table(
    body: HPTableRequest,
    orchestrator=Depends(get_orchestrator),
):
    data = _dispatch(orchestrator, "hp_table", body.model_dump())
    return HPTableResponse(**data)


@app.get("/api/corollary4", response_model=CorollaryResponse)
def corollary4(
    numeric: bool = False,
    beta_abs: Optional[List[str]] = Query(default=None),
    orchestrator=Depends(get_orchestrator),
):
    data = _dispatch(orchestrator, "corollary4", {"numeric": numeric, "beta_abs": beta_abs or []})
    return CorollaryResponse(**data)
