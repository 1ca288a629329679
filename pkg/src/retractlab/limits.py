"""Global step budget for bounded searches (``RETRACTLAB_MAX_STEPS``)."""

from __future__ import annotations

import os

from .errors import StepCapExceeded

DEFAULT_MAX_STEPS = 10**6


def max_steps() -> int:
    raw = os.environ.get("RETRACTLAB_MAX_STEPS")
    if not raw:
        return DEFAULT_MAX_STEPS
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_STEPS
    return max(1, value)


class StepBudget:
    """Counts work units and raises :class:`StepCapExceeded` past the cap."""

    def __init__(self, cap: int | None = None):
        self.cap = max_steps() if cap is None else cap
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            raise StepCapExceeded(f"step cap {self.cap} exhausted")
