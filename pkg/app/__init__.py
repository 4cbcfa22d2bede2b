from .orchestrator import (
    Orchestrator,
    AgentRequest,
    AgentResponse,
    RequestType,
    build_bound_request,
    build_verify_request,
)

__all__ = [
    "Orchestrator",
    "AgentRequest",
    "AgentResponse",
    "RequestType",
    "build_bound_request",
    "build_verify_request",
]
