"""Ordered batch execution over a thread pool."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def split_batches(count: int, workers: int) -> list[range]:
    """Split range(count) into at most `workers` contiguous batches."""
    workers = max(1, min(workers, count)) if count else 1
    size, extra = divmod(count, workers)
    batches = []
    start = 0
    for index in range(workers):
        stop = start + size + (1 if index < extra else 0)
        batches.append(range(start, stop))
        start = stop
    return batches


def run_batches(fn: Callable[[T], R], batches: Sequence[T], workers: int) -> list[R]:
    """Apply fn to every batch; results come back in batch order."""
    if workers <= 1 or len(batches) <= 1:
        return [fn(batch) for batch in batches]
    logger.debug("running %d batches on %d workers", len(batches), workers)
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sipkit") as pool:
        return list(pool.map(fn, batches))
