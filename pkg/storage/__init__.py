from .models import (
    BoundCertificate,
    CERTIFICATE_KEYS,
    DiagnosticReport,
    Rounding,
)

from .repositories import (
    CertificateRepository,
)

__all__ = [
    # Models
    "BoundCertificate",
    "CERTIFICATE_KEYS",
    "DiagnosticReport",
    "Rounding",

    # Repositories
    "CertificateRepository",
]
