"""Rendering and writing sweep reports."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import List, Optional

from birkhoff_app.logging_config import get_logger, log_event
from logic.validation import Report
from models.errors import ConfigurationError

LOGGER = get_logger(__name__)


def render_json(report: Report) -> str:
    return json.dumps(report.payload(), indent=2, sort_keys=True) + "\n"


def render_text(report: Report) -> str:
    lines: List[str] = [
        f"{report.verb}: {report.items_zero}/{report.items_total} expected-zero items vanish",
    ]
    lines.extend(report.output)
    for failure in report.failures:
        lines.append(f"NONZERO {failure.family}{tuple(failure.indices)}: {failure.residual}")
    for finding in report.findings:
        lines.append(f"FINDING {finding.code}: {finding.message}")
        if finding.printed:
            lines.append(f"  printed: {finding.printed}")
        if finding.derived:
            lines.append(f"  derived: {finding.derived}")
    lines.append(f"digest {report.digest}")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    """``json`` is the full report; ``text`` and ``latex`` print its output lines."""

    if fmt == "json":
        return render_json(report)
    return render_text(report)


def write_report(text: str, out: Optional[str], output_dir: Optional[str] = None) -> Optional[Path]:
    """Write to ``out`` (relative paths resolve under ``output_dir``); ``None`` means stdout."""

    if not out:
        return None
    path = Path(out)
    if output_dir and not path.is_absolute():
        path = Path(output_dir) / path
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    log_event(LOGGER, logging.INFO, "report_written", path=str(path), size=len(text))
    return path


__all__ = ["render", "render_json", "render_text", "write_report"]
