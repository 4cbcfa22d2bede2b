from __future__ import annotations
from typing import Any, Dict, List, Literal, Optional
from pydantic import BaseModel, Field


class BoundRequest(BaseModel):
    alpha: str
    beta: str
    K: Optional[int] = None
    L: Optional[int] = None
    E: Optional[str] = None          # "p/q" 或十進位
    max_K: Optional[int] = Field(default=None, ge=1)
    max_L: Optional[int] = Field(default=None, ge=1)
    precision: Optional[int] = Field(default=None, ge=64)
    logA: Optional[str] = None
    logB: Optional[str] = None


class BoundResponse(BaseModel):
    certificate: Dict[str, Any]


class VerifyRequest(BaseModel):
    certificate: Dict[str, Any]
    precision: Optional[int] = Field(default=None, ge=64)


class CheckItem(BaseModel):
    name: str
    passed: bool
    count: int
    detail: str = ""


class SuiteItem(BaseModel):
    name: str
    passed: bool
    checks: List[CheckItem]


class VerifyResponse(BaseModel):
    key: str
    report: SuiteItem


class DiagnoseRequest(BaseModel):
    alpha: str
    beta: str
    K: int = Field(ge=1)
    L: int = Field(ge=2)
    E: str
    precision: Optional[int] = Field(default=None, ge=64)
    system: Literal["auto", "minors", "dual"] = "auto"


class DiagnoseResponse(BaseModel):
    diagnostic: Dict[str, Any]


class LemmaRequest(BaseModel):
    suite: str = "all"
    trials: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None


class LemmaResponse(BaseModel):
    suite: str
    passed: bool
    suites: List[SuiteItem]


class HPTableRequest(BaseModel):
    nodes: List[str]
    params: List[int]
    method: Literal["lambda", "convolution"] = "lambda"


class HPTableRow(BaseModel):
    node: str
    n: int
    p: List[str]


class HPTableResponse(BaseModel):
    sigma: int
    method: str
    order: int
    rows: List[HPTableRow]


class AsymptoticItem(BaseModel):
    E: str
    c1: str
    c2: str
    gamma: str
    objective: str
    method: str


class FiniteSizeItem(BaseModel):
    beta_abs: str
    K: int
    L: int
    E: str
    exponent: str
    normalised_margin: str


class CorollaryResponse(BaseModel):
    closed_form: AsymptoticItem
    historical_constants: Dict[str, str]
    numeric: Optional[AsymptoticItem] = None
    relative_gap: Optional[str] = None
    finite_size: Optional[List[FiniteSizeItem]] = None


__all__ = [
    "BoundRequest",
    "BoundResponse",
    "VerifyRequest",
    "VerifyResponse",
    "DiagnoseRequest",
    "DiagnoseResponse",
    "LemmaRequest",
    "LemmaResponse",
    "HPTableRequest",
    "HPTableResponse",
    "CorollaryResponse",
]
