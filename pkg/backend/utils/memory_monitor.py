"""
Memory monitor - resident-set tracking around suite runs
"""
import logging
import os
from contextlib import contextmanager
from typing import NamedTuple

import psutil

logger = logging.getLogger(__name__)

MB = 1024 * 1024


class MemorySnapshot(NamedTuple):
    rss_mb: float
    percent: float


class MemoryMonitor:
    """RSS snapshots of the current process"""

    def __init__(self, threshold_mb: int = 1024):
        self.threshold_mb = threshold_mb
        self.process = psutil.Process(os.getpid())

    def snapshot(self) -> MemorySnapshot:
        return MemorySnapshot(self.process.memory_info().rss / MB, self.process.memory_percent())

    def over_threshold(self) -> bool:
        """True when RSS exceeds the threshold; logged as a warning"""
        current = self.snapshot()
        if current.rss_mb > self.threshold_mb:
            logger.warning(f"Memory usage ({current.rss_mb:.1f}MB) exceeds threshold ({self.threshold_mb}MB)")
            return True
        return False

    @contextmanager
    def track(self, label: str):
        """Log RSS before and after the block at debug level"""
        before = self.snapshot()
        logger.debug(f"[{label}] RSS {before.rss_mb:.1f}MB ({before.percent:.1f}%)")
        try:
            yield before
        finally:
            after = self.snapshot()
            logger.debug(f"[{label}] RSS {after.rss_mb:.1f}MB, delta {after.rss_mb - before.rss_mb:+.1f}MB")

