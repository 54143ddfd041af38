"""Global match clock and sliding windows.

Half-relative minutes map to a single clock with nominal offsets
(0, 45, 90, 105). Regulation and extra time are separate period groups;
windows never straddle the two.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .passlog import HALF_OFFSETS, MatchLog, PassEvent


class PeriodGroup(enum.Enum):
    REGULATION = "regulation"
    EXTRA_TIME = "extratime"

    @property
    def halves(self) -> tuple[int, int]:
        return (1, 2) if self is PeriodGroup.REGULATION else (3, 4)

    @property
    def start(self) -> int:
        """Global minute at which the group's first half kicks off."""
        return HALF_OFFSETS[self.halves[0]]

    @classmethod
    def of_half(cls, half: int) -> PeriodGroup:
        if half in (1, 2):
            return cls.REGULATION
        if half in (3, 4):
            return cls.EXTRA_TIME
        raise ValueError(f"invalid half {half}")


def to_global(half: int, minute: int) -> int:
    if half not in HALF_OFFSETS:
        raise ValueError(f"invalid half {half}")
    return HALF_OFFSETS[half] + minute


@dataclass(frozen=True)
class Window:
    """Half-open span ``[start, start + length)`` of global minutes."""

    start: int
    length: int = 15
    index: int = 0
    # when set, membership also requires the event's half to be in this group
    group: PeriodGroup | None = None

    @property
    def end(self) -> int:
        return self.start + self.length

    def contains(self, event: PassEvent) -> bool:
        if self.group is not None and event.half not in self.group.halves:
            return False
        return self.start <= event.global_minute < self.end


def group_events(events: Iterable[PassEvent], group: PeriodGroup) -> list[PassEvent]:
    return [e for e in events if e.half in group.halves]


def windows(
    log: MatchLog | Sequence[PassEvent],
    group: PeriodGroup,
    length: int = 15,
    step: int = 1,
) -> list[Window]:
    """Enumerate trailing windows over one period group.

    Windows start at the group's kickoff minute and advance by ``step``;
    the last one is the latest whose span still ends no later than one
    minute past the group's final event.
    """
    if length < 1 or step < 1:
        raise ValueError("window length and step must be >= 1")
    events = log.events if isinstance(log, MatchLog) else log
    minutes = [e.global_minute for e in group_events(events, group)]
    if not minutes:
        return []
    first, limit = group.start, max(minutes) + 1
    starts = range(first, limit - length + 1, step)
    return [Window(s, length, i, group) for i, s in enumerate(starts)]


def assign(events: Iterable[PassEvent], w: Window) -> list[PassEvent]:
    return [e for e in events if w.contains(e)]


def window_ending_at(
    log: MatchLog, end: int, length: int = 15, step: int = 1
) -> Window | None:
    """Find the enumerated window whose end minute is ``end``, if any."""
    for group in PeriodGroup:
        for w in windows(log, group, length, step):
            if w.end == end:
                return w
    return None
