"""Pydantic schemas for run configurations and sweep reports."""

from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from models.symbols import Stratum

REPORT_SCHEMA = 1
ARTIFACT_VERSION = "0.1.0"

OutputFormat = Literal["json", "text", "latex"]

# Verbs whose index bounds constrain the series truncation.
WINDOWED_VERBS = frozenset({"verify closure"})


class RunConfig(BaseModel):
    """One CLI run: the verb, its index bounds and output options."""

    verb: str = Field(min_length=1)
    stratum: Stratum = Stratum.BIG_CELL
    jmax: int = Field(default=3, ge=1)
    kmax: int = Field(default=3, ge=1)
    mmax: int = Field(default=3, ge=1)
    nmax: int = Field(default=4, ge=1)
    order: Optional[int] = Field(default=None, ge=1)
    level: int = Field(default=1, ge=1, le=2)
    variant: Literal["derived", "printed"] = "derived"
    gauge_v0: Optional[str] = None
    seed: int = 0
    format: OutputFormat = "json"
    out: Optional[str] = None
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _default_order(self) -> "RunConfig":
        if self.order is None:
            self.order = self.mmax + self.jmax + self.kmax + 2
        if self.verb not in WINDOWED_VERBS:
            return self
        # The negative-degree probes reach z^-mmax after a product shifted by max(j, k).
        needed = self.mmax + max(self.jmax, self.kmax)
        if self.order < needed:
            raise ValueError(f"order {self.order} is below mmax + max(jmax, kmax) = {needed}")
        return self

    def bounds(self) -> Dict[str, Any]:
        """The fields that shape the output; ``out`` and ``threads`` never do."""

        return self.model_dump(mode="json", exclude={"verb", "format", "out", "threads"})


class ItemResult(BaseModel):
    family: str
    indices: List[int]
    value: str
    is_zero: bool


class FindingModel(BaseModel):
    code: str
    message: str
    printed: str = ""
    derived: str = ""


class Failure(BaseModel):
    family: str
    indices: List[int]
    residual: str


class Report(BaseModel):
    """A sweep result; everything except ``elapsed_ms`` enters the digest."""

    schema_version: int = REPORT_SCHEMA
    version: str = ARTIFACT_VERSION
    verb: str
    bounds: Dict[str, Any] = Field(default_factory=dict)
    items: List[ItemResult] = Field(default_factory=list)
    output: List[str] = Field(default_factory=list)
    findings: List[FindingModel] = Field(default_factory=list)
    elapsed_ms: float = 0.0
    digest: str = ""

    @property
    def items_total(self) -> int:
        return len(self.items)

    @property
    def items_zero(self) -> int:
        return sum(1 for item in self.items if item.is_zero)

    @property
    def failures(self) -> List[Failure]:
        return [
            Failure(family=item.family, indices=item.indices, residual=item.value)
            for item in self.items
            if not item.is_zero
        ]

    @property
    def exit_code(self) -> int:
        return 0 if self.items_zero == self.items_total else 2

    def payload(self) -> Dict[str, Any]:
        return {
            "schema": self.schema_version,
            "version": self.version,
            "verb": self.verb,
            "bounds": self.bounds,
            "items_total": self.items_total,
            "items_zero": self.items_zero,
            "failures": [failure.model_dump() for failure in self.failures],
            "items": [item.model_dump() for item in self.items],
            "output": list(self.output),
            "findings": [finding.model_dump() for finding in self.findings],
            "elapsed_ms": self.elapsed_ms,
            "digest": self.digest,
        }

    def compute_digest(self) -> str:
        """sha256 over the verb, the resolved bounds and the content; timing is left out."""

        body = {k: v for k, v in self.payload().items() if k not in ("elapsed_ms", "digest")}
        canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def sealed(self) -> "Report":
        return self.model_copy(update={"digest": self.compute_digest()})


class ValidationResult(BaseModel):
    """Wrapper returned when a configuration fails validation."""

    status: Literal["invalid"] = "invalid"
    message: str
    details: List[Dict[str, Any]]


def validation_failure(message: str, exc: ValidationError) -> Dict[str, Any]:
    """Translate Pydantic errors into a consistent payload."""

    details = [
        {"loc": list(err.get("loc", ())), "msg": err.get("msg", ""), "type": err.get("type", "")}
        for err in exc.errors()
    ]
    return ValidationResult(message=message, details=details).model_dump()


__all__ = [
    "ARTIFACT_VERSION",
    "Failure",
    "FindingModel",
    "ItemResult",
    "REPORT_SCHEMA",
    "Report",
    "RunConfig",
    "ValidationResult",
    "WINDOWED_VERBS",
    "validation_failure",
]
