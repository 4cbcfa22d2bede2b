from __future__ import annotations

import logging
from typing import Optional

from agents import BoundAgent, CorollaryAgent, LemmaAgent
from skills import SimpleSettingsStore
from storage import CertificateRepository

from .orchestrator import Orchestrator

LOG_FORMAT = "[%(name)s] %(message)s"


def setup_logging(level: int = logging.INFO) -> None:
    logging.basicConfig(level=level, format=LOG_FORMAT)


def create_app(settings_store: Optional[SimpleSettingsStore] = None) -> Orchestrator:
    """
    建立整個應用的 Orchestrator 實例。

    這裡只做「正式依賴注入」：
    - 初始化 Skills 層的設定（EXPBOUND_CONFIG / EXPBOUND_PRECISION）與證書 repository
    - 建立 BoundAgent / LemmaAgent / CorollaryAgent
    - 回傳 Orchestrator

    外部（API / CLI）只需要呼叫 create_app() 拿到 orchestrator，
    再用 orchestrator.handle(request) 來執行任務。
    """

    # === Skills 層 === #
    settings_store = settings_store or SimpleSettingsStore()
    repository = CertificateRepository()

    # === Agents 層 === #
    bound_agent = BoundAgent(settings_store=settings_store, repository=repository)
    lemma_agent = LemmaAgent(settings=settings_store.get_settings())
    corollary_agent = CorollaryAgent()

    # === Orchestrator === #
    return Orchestrator(
        bound_agent=bound_agent,
        lemma_agent=lemma_agent,
        corollary_agent=corollary_agent,
    )
