from __future__ import annotations

import logging
from typing import Any, Dict, List

from app.orchestrator import AgentResponse, CorollaryAgentProtocol
from skills.asymptotics import (
    HISTORICAL_CONSTANTS,
    closed_form_solution,
    finite_size_report,
    numeric_optimize,
)
from skills.errors import ExpBoundError

logger = logging.getLogger("CorollaryAgent")

DEFAULT_PRECISION = 128


class CorollaryAgent(CorollaryAgentProtocol):
    """
    漸近常數：closed form 一定算；numeric=True 時再跑一次數值最佳化做比對；
    beta_abs 有給時附上有限 |β| 的 finite-size report。
    """

    def handle(self, payload: Dict[str, Any]) -> AgentResponse:
        try:
            precision = int(payload.get("precision") or DEFAULT_PRECISION)
            closed = closed_form_solution(precision)
            data: Dict[str, Any] = {
                "closed_form": closed.to_dict(),
                "historical_constants": dict(HISTORICAL_CONSTANTS),
            }

            if payload.get("numeric"):
                tolerance = float(payload.get("tolerance") or 1e-12)
                numeric = numeric_optimize(tolerance=tolerance, precision=precision)
                gap = abs(numeric.objective.value - closed.objective.value) / closed.objective.value
                data["numeric"] = numeric.to_dict()
                data["relative_gap"] = f"{float(gap):.3e}"
                logger.debug(f"numeric optimum differs from the closed form by {data['relative_gap']}")

            reports: List[Dict[str, Any]] = []
            for value in payload.get("beta_abs") or []:
                reports.append(finite_size_report(str(value), precision).to_dict())
            if reports:
                data["finite_size"] = reports

            return AgentResponse(ok=True, data=data)
        except (ExpBoundError, ValueError) as e:
            return AgentResponse.failure(e)
