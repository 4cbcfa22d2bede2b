__version__ = "0.1.0"

# bound_engine / diagnostics 依賴 storage.models（它又 import skills.errors），
# 所以不在這裡 re-export，請直接 import skills.bound_engine / skills.diagnostics。
from .errors import (
    BoundRejected,
    ExpBoundError,
    HypothesisNotMet,
    InconsistencyError,
    NoCertificateFound,
    ParseError,
    UnsupportedFieldError,
    error_kind,
)
from .exactnum import AlgebraicNumber, RealDR, parse_algebraic, parse_rational
from .reports import CheckResult, SuiteReport
from .settings import EngineSettings, SimpleSettingsStore

__all__ = [
    "__version__",
    # Errors
    "ExpBoundError",
    "ParseError",
    "UnsupportedFieldError",
    "HypothesisNotMet",
    "BoundRejected",
    "NoCertificateFound",
    "InconsistencyError",
    "error_kind",
    # Numbers
    "AlgebraicNumber",
    "RealDR",
    "parse_algebraic",
    "parse_rational",
    # Reports / settings
    "CheckResult",
    "SuiteReport",
    "EngineSettings",
    "SimpleSettingsStore",
]
