"""
Pydantic v2 schemas for wittforge.

These are the data contracts shared by the check registry, the check-run
pipeline and the CLI. Mathematical objects themselves are plain Python
classes; the payload models below are their JSON wire form.
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import Any, Literal, Optional
from uuid import uuid4

from pydantic import BaseModel, Field, field_validator

CheckModule = Literal["rings", "witt", "sharp", "sigma", "categories", "prisms"]
CheckStatus = Literal["pass", "fail", "error"]

MAX_COUNTEREXAMPLES = 10


# ---------------------------------------------------------------------------
# Registry entries
# ---------------------------------------------------------------------------

class CheckDescriptor(BaseModel):
    """Static description of one registered check."""

    id: str
    """Stable check id, e.g. 'L-invertible-in-W'."""

    anchor: str
    """Short statement of the identity the check verifies."""

    module: CheckModule

    rings: list[str] = Field(default_factory=list)
    """Ring specs the check runs over, in ring grammar."""

    mode: Literal["exhaustive", "sampled"] = "exhaustive"

    sample_count: Optional[int] = Field(default=None, ge=1)
    """Samples drawn in sampled mode. None means the configured default."""

    description: str = ""


# ---------------------------------------------------------------------------
# Check output
# ---------------------------------------------------------------------------

class Counterexample(BaseModel):
    """Inputs on which an identity failed, rendered as strings."""

    inputs: dict[str, str] = Field(default_factory=dict)
    detail: str = ""


class Report(BaseModel):
    """Result of one check run."""

    check_id: str
    status: CheckStatus
    counts: dict[str, int] = Field(default_factory=dict)
    """Named tallies, at least 'checked' and 'failed'."""

    counterexamples: list[Counterexample] = Field(default_factory=list)
    witness: dict[str, str] = Field(default_factory=dict)
    """Values worth showing even on success, e.g. a computed Dwork lift."""

    wall_time_ms: float = 0.0
    seed: int = 0
    message: Optional[str] = None
    """Exception text when status == 'error'."""

    @field_validator("counterexamples")
    @classmethod
    def cap_counterexamples(cls, v: list[Counterexample]) -> list[Counterexample]:
        return v[:MAX_COUNTEREXAMPLES]

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def deterministic_dict(self) -> dict[str, Any]:
        """JSON-ready dict without wall time; identical across runs with one seed."""
        return self.model_dump(mode="json", exclude={"wall_time_ms"})


# ---------------------------------------------------------------------------
# Audit log entry: one line per check run in the JSONL audit file
# ---------------------------------------------------------------------------

class CheckAuditEntry(BaseModel):
    """Append-only record of a single check execution."""

    audit_id: str = Field(default_factory=lambda: str(uuid4()))
    run_id: str
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    check_id: str
    status: CheckStatus
    counts: dict[str, int] = Field(default_factory=dict)
    seed: int

    @classmethod
    def from_report(cls, report: Report, run_id: str) -> "CheckAuditEntry":
        """Build an audit entry from a finished Report."""
        return cls(
            run_id=run_id,
            check_id=report.check_id,
            status=report.status,
            counts=dict(report.counts),
            seed=report.seed,
        )


# ---------------------------------------------------------------------------
# Wire payloads for CLI input / output
# ---------------------------------------------------------------------------

class WittVectorPayload(BaseModel):
    """A truncated Witt vector: header plus element strings."""

    p: int = Field(ge=2)
    n: int = Field(ge=1)
    degree: int = 0
    ring: str
    components: list[str]

    @field_validator("components")
    @classmethod
    def components_not_empty(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("a Witt vector needs at least one component")
        return v


class SigmaPointPayload(BaseModel):
    ring: str
    v_minus: str
    zeta: list[str]
    gamma: list[str]


class DPElementPayload(BaseModel):
    """Divided-power algebra element as (exponent vector, coefficient) terms."""

    p: int = Field(ge=2)
    depth: int = Field(ge=1)
    legs: int = Field(default=1, ge=1)
    terms: list[tuple[list[int], str]] = Field(default_factory=list)


class ArrowPayload(BaseModel):
    id: str
    src: str
    dst: str
    degree: int = 0


class CategoryPayload(BaseModel):
    """A finite (graded) category: objects, arrows and the composition table."""

    objects: list[str]
    arrows: list[ArrowPayload]
    composition: list[list[str]] = Field(default_factory=list)
    """Triples [f, g, h] meaning g ∘ f = h."""
