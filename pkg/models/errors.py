"""Exception hierarchy shared by the computation layers and the CLI."""

from __future__ import annotations

from typing import Any, Dict, List, Optional


class BirkhoffError(Exception):
    """Root of every error raised by this package."""


class ParseError(BirkhoffError):
    """Malformed polynomial text."""

    def __init__(self, message: str, text: str = "", position: int = -1) -> None:
        super().__init__(message if position < 0 else f"{message} at column {position}")
        self.text = text
        self.position = position


class TruncationError(BirkhoffError):
    """A series window is too small to hold the requested coefficients."""


class NonTriangularBasisError(BirkhoffError):
    """An ideal generator cannot be solved for its leading symbol."""


class NonLinearDeltaError(BirkhoffError):
    """The jet ansatz was applied to an item that is not linear in Delta."""


class RewriteDepthError(BirkhoffError):
    """A rewrite chain exceeded its depth guard or revisited a symbol."""


class EliminationError(BirkhoffError):
    """A linear elimination or an x2-integration could not be completed."""

    def __init__(self, message: str, residual: Any = None) -> None:
        super().__init__(message)
        self.residual = residual


class MissingEntryError(BirkhoffError):
    """A cocycle or linear map is missing an entry needed by an identity."""

    def __init__(self, what: str, key: Any) -> None:
        super().__init__(f"{what} has no entry for {key!r}")
        self.key = key


class ForeignSymbolError(BirkhoffError):
    """A polynomial uses symbols outside the coordinates of a phase space."""


class UnknownVerbError(BirkhoffError):
    """The requested CLI verb is not registered."""

    def __init__(self, verb: str, suggestion: Optional[str] = None) -> None:
        hint = f" (did you mean '{suggestion}'?)" if suggestion else ""
        super().__init__(f"unknown verb '{verb}'{hint}")
        self.verb = verb
        self.suggestion = suggestion


class ConfigurationError(BirkhoffError):
    """Invalid run configuration: bounds, formats or output paths."""

    def __init__(self, message: str, details: Optional[List[Dict[str, Any]]] = None) -> None:
        super().__init__(message)
        self.details = details or []


__all__ = [
    "BirkhoffError",
    "ConfigurationError",
    "EliminationError",
    "ForeignSymbolError",
    "MissingEntryError",
    "NonLinearDeltaError",
    "NonTriangularBasisError",
    "ParseError",
    "RewriteDepthError",
    "TruncationError",
    "UnknownVerbError",
]
