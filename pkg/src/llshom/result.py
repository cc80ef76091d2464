from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Status(enum.Enum):
    YES = "YES"
    NO = "NO"
    BUDGET_EXCEEDED = "UNKNOWN"
    NOT_APPLICABLE = "N/A"


@dataclass
class Result:
    status: Status
    witness: tuple[int, ...] | None = None
    stats: dict = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.status is Status.YES

    @property
    def decided(self) -> bool:
        return self.status in (Status.YES, Status.NO)


def yes(witness, **stats) -> Result:
    return Result(Status.YES, tuple(witness), stats)


def no(**stats) -> Result:
    return Result(Status.NO, None, stats)
