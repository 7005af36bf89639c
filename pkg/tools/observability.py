"""Observability helpers for instrumenting sweeps."""

from __future__ import annotations

import logging
import time
from functools import wraps
from typing import Callable

from birkhoff_app.logging_config import ensure_correlation_id, get_logger, log_event
from logic.validation import Report, RunConfig

LOGGER = get_logger(__name__)


def instrument_sweep(verb: str) -> Callable[[Callable[..., Report]], Callable[..., Report]]:
    """Log start, completion and failure of a sweep, and stamp ``elapsed_ms`` on its report."""

    def decorator(func: Callable[..., Report]) -> Callable[..., Report]:
        @wraps(func)
        def wrapper(config: RunConfig, *args, **kwargs) -> Report:
            correlation_id = ensure_correlation_id()
            start = time.perf_counter()
            log_event(
                LOGGER,
                logging.INFO,
                "sweep_started",
                verb=verb,
                correlation_id=correlation_id,
                bounds=config.bounds(),
                threads=config.threads,
            )
            try:
                report = func(config, *args, **kwargs)
            except Exception:
                duration_ms = round((time.perf_counter() - start) * 1000, 2)
                log_event(
                    LOGGER,
                    logging.ERROR,
                    "sweep_failed",
                    verb=verb,
                    correlation_id=correlation_id,
                    duration_ms=duration_ms,
                    exc_info=True,
                )
                raise
            duration_ms = round((time.perf_counter() - start) * 1000, 2)
            log_event(
                LOGGER,
                logging.INFO,
                "sweep_completed",
                verb=verb,
                correlation_id=correlation_id,
                duration_ms=duration_ms,
                items_total=report.items_total,
                items_zero=report.items_zero,
                findings=len(report.findings),
            )
            return report.model_copy(update={"elapsed_ms": duration_ms})

        return wrapper

    return decorator


__all__ = ["instrument_sweep"]
