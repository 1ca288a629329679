from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

YES = "yes"
NO = "no"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer of a decision procedure.

    ``yes`` always carries a checkable certificate, ``no`` a reason that does
    not depend on any search bound, ``inconclusive`` the bounds it exhausted.
    """

    outcome: str
    certificate: Any = None
    reason: str | None = None
    bounds: dict | None = None
    flags: dict = field(default_factory=dict)

    @classmethod
    def yes(cls, certificate, reason=None, bounds=None, **flags):
        return cls(YES, certificate, reason, bounds, flags)

    @classmethod
    def no(cls, reason, certificate=None, bounds=None, **flags):
        return cls(NO, certificate, reason, bounds, flags)

    @classmethod
    def inconclusive(cls, bounds, reason=None, **flags):
        return cls(INCONCLUSIVE, None, reason, bounds, flags)

    @property
    def is_yes(self) -> bool:
        return self.outcome == YES

    @property
    def is_no(self) -> bool:
        return self.outcome == NO

    @property
    def is_inconclusive(self) -> bool:
        return self.outcome == INCONCLUSIVE
