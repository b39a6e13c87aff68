from src.models.schemas import (
    CategoryPayload,
    CheckAuditEntry,
    CheckDescriptor,
    Counterexample,
    DPElementPayload,
    Report,
    SigmaPointPayload,
    WittVectorPayload,
)

__all__ = [
    "CategoryPayload",
    "CheckAuditEntry",
    "CheckDescriptor",
    "Counterexample",
    "DPElementPayload",
    "Report",
    "SigmaPointPayload",
    "WittVectorPayload",
]
