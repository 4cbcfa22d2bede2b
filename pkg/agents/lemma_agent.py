from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Dict, List

from app.orchestrator import AgentResponse, LemmaAgentProtocol
from skills.errors import ExpBoundError, ParseError
from skills.exactnum import parse_rational
from skills.hermite_pade import hp_coefficients, remainder_order
from skills.lemma_suites import SUITE_NAMES, run_suite
from skills.settings import EngineSettings

logger = logging.getLogger("LemmaAgent")


class LemmaAgent(LemmaAgentProtocol):
    """
    負責：
    - 跑 lemma suites（numtheory / feldman / ... / all）
    - 印 Hermite-Padé 係數表 p_{ℓ,k}（exact 分數字串），debug 用
    """

    def __init__(self, settings: EngineSettings) -> None:
        self._settings = settings

    # ========= Orchestrator 入口 ========= #

    def handle(self, payload: Dict[str, Any]) -> AgentResponse:
        try:
            if payload.get("mode", "lemmas") == "hp_table":
                return self._hp_table(payload)
            return self._lemmas(payload)
        except (ExpBoundError, ValueError) as e:
            return AgentResponse.failure(e)

    # ========= lemmas ========= #

    def _lemmas(self, payload: Dict[str, Any]) -> AgentResponse:
        suite = payload.get("suite") or "all"
        if suite not in SUITE_NAMES:
            raise ParseError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
        trials = self._settings.lemmas.trials if payload.get("trials") is None else int(payload["trials"])
        seed = self._settings.lemmas.seed if payload.get("seed") is None else int(payload["seed"])
        if trials < 1:
            raise ValueError(f"trials must be >= 1, got {trials}")

        reports = run_suite(suite, trials=trials, seed=seed)
        data = {
            "suite": suite,
            "passed": all(r.passed for r in reports),
            "suites": [r.to_dict() for r in reports],
        }
        if not data["passed"]:
            failed = [f"{r.name}.{c.name}" for r in reports for c in r.checks if not c.passed]
            return AgentResponse(
                ok=False,
                data=data,
                error=f"lemma checks failed: {', '.join(failed)}",
                error_kind="internal",
            )
        return AgentResponse(ok=True, data=data)

    # ========= hp-table ========= #

    def _hp_table(self, payload: Dict[str, Any]) -> AgentResponse:
        nodes = [parse_rational(str(x)) for x in payload.get("nodes") or []]
        params = [int(n) for n in payload.get("params") or []]
        if len(nodes) < 2 or len(nodes) != len(params):
            raise ParseError("hp-table needs at least two nodes and one parameter per node")
        method = payload.get("method", "lambda")

        system = hp_coefficients(nodes, params, method=method)
        table: List[Dict[str, Any]] = []
        for ell, n in enumerate(system.params):
            table.append(
                {
                    "node": _fraction_text(system.nodes[ell]),
                    "n": n,
                    "p": [_fraction_text(system.p(ell, k)) for k in range(n)],
                }
            )
        order = remainder_order(system, system.sigma - 1)
        logger.debug(f"hp-table sigma={system.sigma}, order >= {order}")
        return AgentResponse(
            ok=True,
            data={
                "sigma": system.sigma,
                "method": method,
                "order": order,
                "rows": table,
            },
        )


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
