"""Pass-log parsing, validation and serialization.

A pass log is line-oriented text, one pass per line::

    <half> <minute> <player> <zone> <player'> <zone'>

Blank lines and ``#`` comments are ignored. Two comment forms carry
metadata: ``# match: <label>`` and ``# team: <label>``.
"""

from __future__ import annotations

import csv
import enum
import io
import re
from dataclasses import dataclass, field
from typing import Iterable

HALF_OFFSETS = {1: 0, 2: 45, 3: 90, 4: 105}
# Upper bound on the within-half minute; leaves room for stoppage time.
MINUTE_BOUNDS = {1: 60, 2: 60, 3: 25, 4: 25}
# Beyond this a minute is rejected even in lenient mode.
MINUTE_CEILING = 120

ZONE_LABELS = (
    "OwnBox",
    "OwnWingbackLeft",
    "OwnWingbackRight",
    "OwnMidfield",
    "Center",
    "OppWingLeft",
    "OppWingRight",
    "OppMidfield",
    "OppBox",
)
DEFENSIVE_LABELS = frozenset(ZONE_LABELS[:4])
OFFENSIVE_LABELS = frozenset(ZONE_LABELS[5:])

_INT_RE = re.compile(r"-?[0-9]+")
_SEP_RE = re.compile(r"[ \t]+")


class ParseError(ValueError):
    """Raised on a malformed pass log, roster or zone-scheme file."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(f"{message}, line {line}" if line is not None else message)


@dataclass(frozen=True)
class ParseIssue:
    line: int
    message: str
    fatal: bool = True  # False: event kept, issue is a warning

    def __str__(self) -> str:
        return f"{self.message}, line {self.line}"


@dataclass(frozen=True)
class ZoneScheme:
    """Bijection between zone ids 1..9 and pitch-region labels."""

    mapping: dict[int, str]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(1, 10)):
            raise ParseError("zone scheme must define ids 1..9 exactly once")
        if sorted(self.mapping.values()) != sorted(ZONE_LABELS):
            raise ParseError(
                "zone scheme labels must be a permutation of " + ", ".join(ZONE_LABELS)
            )

    def label(self, zone: int) -> str:
        return self.mapping[zone]

    def zone(self, label: str) -> int:
        for k, v in self.mapping.items():
            if v == label:
                return k
        raise KeyError(label)

    def is_defensive(self, zone: int) -> bool:
        return self.mapping[zone] in DEFENSIVE_LABELS

    def is_offensive(self, zone: int) -> bool:
        return self.mapping[zone] in OFFENSIVE_LABELS

    @classmethod
    def parse(cls, text: str) -> ZoneScheme:
        """Read a scheme file of nine ``id=Label`` lines."""
        mapping: dict[int, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ParseError("expected id=Label", lineno)
            try:
                zid = int(key.strip())
            except ValueError:
                raise ParseError(f"non-integer zone id {key.strip()!r}", lineno) from None
            if zid in mapping:
                raise ParseError(f"duplicate zone id {zid}", lineno)
            mapping[zid] = value.strip()
        return cls(mapping)


DEFAULT_SCHEME = ZoneScheme(dict(enumerate(ZONE_LABELS, start=1)))


class Position(str, enum.Enum):
    GOALKEEPER = "Goalkeeper"
    DEFENDER = "Defender"
    MIDFIELDER = "Midfielder"
    FORWARD = "Forward"


@dataclass(frozen=True)
class RosterEntry:
    number: int
    name: str
    position: Position


@dataclass(frozen=True)
class Roster:
    entries: tuple[RosterEntry, ...]

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            if e.number in seen:
                raise ParseError(f"duplicate squad number {e.number}")
            seen.add(e.number)

    def __contains__(self, number: object) -> bool:
        return any(e.number == number for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def name(self, number: int) -> str | None:
        for e in self.entries:
            if e.number == number:
                return e.name
        return None


@dataclass(frozen=True, order=True)
class VirtualPlayer:
    """A (player, zone) pair: one node of a pass graph."""

    player: int
    zone: int

    def __str__(self) -> str:
        return f"{self.player}@{self.zone}"


@dataclass(frozen=True)
class PassEvent:
    half: int
    minute: int
    passer: int
    zone_from: int
    receiver: int
    zone_to: int
    seq: int = 0
    # source line number; not part of event identity
    line: int = field(default=0, compare=False)

    @property
    def global_minute(self) -> int:
        return HALF_OFFSETS[self.half] + self.minute

    @property
    def source(self) -> VirtualPlayer:
        return VirtualPlayer(self.passer, self.zone_from)

    @property
    def target(self) -> VirtualPlayer:
        return VirtualPlayer(self.receiver, self.zone_to)

    def to_line(self) -> str:
        return (
            f"{self.half} {self.minute} {self.passer} {self.zone_from} "
            f"{self.receiver} {self.zone_to}"
        )


@dataclass(frozen=True)
class MatchLog:
    events: tuple[PassEvent, ...]
    roster: Roster | None = None
    match: str = ""
    team: str = ""
    # lines skipped or flagged by a lenient parse
    issues: tuple[ParseIssue, ...] = ()

    def __len__(self) -> int:
        return len(self.events)

    def with_roster(self, roster: Roster | None) -> MatchLog:
        return MatchLog(self.events, roster, self.match, self.team, self.issues)

    @property
    def players(self) -> frozenset[int]:
        return frozenset(p for e in self.events for p in (e.passer, e.receiver))


def sort_events(events: Iterable[PassEvent]) -> tuple[PassEvent, ...]:
    return tuple(sorted(events, key=lambda e: (e.half, e.minute, e.seq)))


def _check_fields(fields: list[str]) -> tuple[tuple[int, ...], str | None]:
    """Return parsed integers and, if the line is only soft-invalid, a warning.

    Hard violations raise ``ValueError`` with the diagnostic message.
    """
    if len(fields) != 6:
        raise ValueError(f"expected 6 fields, got {len(fields)}")
    values = []
    for tok in fields:
        # int() would accept '+5', '٣' or '1_0'; the format is ASCII digits only
        if not _INT_RE.fullmatch(tok):
            raise ValueError(f"non-integer field {tok!r}")
        values.append(int(tok))
    half, minute, passer, zone_from, receiver, zone_to = values
    if half not in HALF_OFFSETS:
        raise ValueError(f"half {half} not in 1..4")
    if minute < 0:
        raise ValueError(f"negative minute {minute}")
    if minute > MINUTE_CEILING:
        raise ValueError(f"minute {minute} exceeds {MINUTE_CEILING}")
    for zone in (zone_from, zone_to):
        if not 1 <= zone <= 9:
            raise ValueError(f"zone {zone} not in 1..9")
    for player in (passer, receiver):
        if player < 1:
            raise ValueError(f"player number {player} < 1")
    if passer == receiver:
        raise ValueError("passer equals receiver")
    warning = None
    if minute > MINUTE_BOUNDS[half]:
        warning = f"minute {minute} out of bounds for half {half}"
    return tuple(values), warning


def parse_log(
    text: str,
    scheme: ZoneScheme = DEFAULT_SCHEME,
    mode: str = "strict",
    roster: Roster | None = None,
) -> MatchLog:
    """Parse pass-log text into a sorted :class:`MatchLog`.

    In ``strict`` mode the first violation raises :class:`ParseError`
    carrying the 1-based line number. In ``lenient`` mode bad lines are
    skipped and recorded in ``MatchLog.issues``; a minute past the half's
    bound but not past ``MINUTE_CEILING`` only produces a non-fatal issue
    and the event is kept.

    ``scheme`` is accepted so callers can thread the active zone scheme
    through; ids are validated against 1..9 whatever the labels are.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown parse mode {mode!r}")
    events: list[PassEvent] = []
    issues: list[ParseIssue] = []
    meta = {"match": "", "team": ""}
    seq = 0
    for lineno, raw in enumerate(io.StringIO(text, newline=None), start=1):
        line = raw.strip(" \t\n")
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep and key.strip() in meta and not meta[key.strip()]:
                meta[key.strip()] = value.strip()
            continue
        try:
            values, warning = _check_fields(_SEP_RE.split(line))
        except ValueError as exc:
            if mode == "strict":
                raise ParseError(str(exc), lineno) from None
            issues.append(ParseIssue(lineno, str(exc)))
            continue
        if warning is not None:
            if mode == "strict":
                raise ParseError(warning, lineno)
            issues.append(ParseIssue(lineno, warning, fatal=False))
        events.append(PassEvent(*values, seq=seq, line=lineno))
        seq += 1
    return MatchLog(sort_events(events), roster, meta["match"], meta["team"], tuple(issues))


def format_log(log: MatchLog) -> str:
    """Serialize a log back to the line format (inverse of :func:`parse_log`)."""
    out = io.StringIO()
    if log.match:
        out.write(f"# match: {log.match}\n")
    if log.team:
        out.write(f"# team: {log.team}\n")
    for e in log.events:
        out.write(e.to_line() + "\n")
    return out.getvalue()


def parse_roster(text: str) -> Roster:
    """Parse a ``number,name,position`` CSV roster."""
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["number", "name", "position"]:
        raise ParseError("roster header must be number,name,position", 1)
    entries = []
    seen: set[int] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 columns, got {len(row)}", lineno)
        number_s, name, position_s = (c.strip() for c in row)
        try:
            number = int(number_s)
        except ValueError:
            raise ParseError(f"non-integer squad number {number_s!r}", lineno) from None
        if number < 1:
            raise ParseError(f"squad number {number} < 1", lineno)
        if number in seen:
            raise ParseError(f"duplicate squad number {number}", lineno)
        try:
            position = Position(position_s)
        except ValueError:
            raise ParseError(f"unknown position {position_s!r}", lineno) from None
        seen.add(number)
        entries.append(RosterEntry(number, name, position))
    return Roster(tuple(entries))


def validate(log: MatchLog, check_zone_coverage: bool = False) -> list[str]:
    """Return warnings about a parsed log; an empty list means clean.

    Checks run in file order (by ``seq``), since the log itself is sorted.
    Unvisited zones are only reported with ``check_zone_coverage``: short
    logs legitimately leave most zones untouched.
    """
    findings: list[str] = []
    file_order = sorted(log.events, key=lambda e: e.seq)
    last_minute: dict[int, int] = {}
    max_half = 0
    half_violation = False
    for e in file_order:
        where = f"line {e.line}" if e.line else f"record {e.seq}"
        if e.half < max_half and not half_violation:
            findings.append(f"half order violation at {where}")
            half_violation = True
        max_half = max(max_half, e.half)
        if e.half in last_minute and e.minute < last_minute[e.half]:
            findings.append(f"minute decreases within half {e.half} at {where}")
        last_minute[e.half] = e.minute
        if e.minute > MINUTE_BOUNDS[e.half]:
            findings.append(f"minute {e.minute} out of bounds for half {e.half} at {where}")
        if log.roster is not None:
            for p in (e.passer, e.receiver):
                if p not in log.roster:
                    findings.append(f"unknown player {p} at {where}")
    if check_zone_coverage:
        visited = {z for e in log.events for z in (e.zone_from, e.zone_to)}
        findings.extend(f"zone {z} never visited" for z in range(1, 10) if z not in visited)
    return findings
