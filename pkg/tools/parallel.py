"""Ordered worker pool for index sweeps."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from birkhoff_app.logging_config import get_logger, log_event

LOGGER = get_logger(__name__)
T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], tasks: Iterable[T], workers: int = 1) -> List[R]:
    """Apply ``fn`` to every task, returning results in task order.

    ``fn`` must be a module-level function when ``workers > 1``. With one
    worker (or a single task) the map runs in-process, which keeps the
    rewriters' memo tables warm across items.
    """

    items = list(tasks)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunksize = max(1, len(items) // (workers * 4))
    log_event(LOGGER, logging.DEBUG, "pool_started", workers=workers, tasks=len(items), chunksize=chunksize)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


__all__ = ["ordered_map"]
