"""Per-token token-bucket rate limiting with an injectable clock."""

from __future__ import annotations

import math
import threading
import time
from typing import Callable

Clock = Callable[[], float]


class TokenBucket:
    def __init__(self, capacity: int, refill_per_second: float,
                 clock: Clock = time.monotonic) -> None:
        self.capacity = float(capacity)
        self.refill = refill_per_second
        self.clock = clock
        self.tokens = float(capacity)
        self.last = clock()
        self._lock = threading.Lock()

    def acquire(self) -> tuple[bool, int]:
        """(allowed, retryAfterSeconds). Refill, then take one if available."""
        with self._lock:
            now = self.clock()
            self.tokens = min(self.capacity,
                              self.tokens + max(0.0, now - self.last) * self.refill)
            self.last = now
            if self.tokens >= 1.0:
                self.tokens -= 1.0
                return True, 0
            return False, math.ceil((1.0 - self.tokens) / self.refill)
