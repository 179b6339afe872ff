# backend/services/trial_pool.py

"""
Worker pool for Monte Carlo trials.

Results always come back in trial order; each trial owns its own substream,
so the output is identical for any worker count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from backend.config.settings import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class TrialPool:
    """Maps a trial function over inputs with an optional thread pool"""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max(1, int(max_workers or settings.MAX_WORKERS))

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]

        logger.debug(f"Dispatching {len(items)} trials to {self.max_workers} workers")
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            # executor.map preserves input order
            return list(executor.map(fn, items))
