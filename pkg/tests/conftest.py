from __future__ import annotations

import sys
from pathlib import Path

import pytest

from passnet.passlog import MatchLog, PassEvent, format_log, parse_roster, sort_events

DATA = Path(__file__).resolve().parent.parent / "data"


def ev(half, minute, passer, zone_from, receiver, zone_to, seq=0):
    return PassEvent(half, minute, passer, zone_from, receiver, zone_to, seq)


def make_log(rows, **kw) -> MatchLog:
    """Build a sorted log from (half, minute, p, z, p', z') tuples in file order."""
    events = [PassEvent(*r, seq=i, line=i + 1) for i, r in enumerate(rows)]
    return MatchLog(sort_events(events), **kw)


def full_match_rows(halves=(1, 2), per_half=45, per_minute=1):
    """``per_minute`` passes in every minute of each half, alternating players."""
    rows = []
    for h in halves:
        for minute in range(per_half):
            for k in range(per_minute):
                rows.append((h, minute, 8, 5, 14, 5) if k % 2 == 0 else (h, minute, 14, 5, 8, 5))
    return rows


@pytest.fixture
def roster_text() -> str:
    return (DATA / "spain_2010_roster.csv").read_text(encoding="utf-8")


@pytest.fixture
def roster(roster_text):
    return parse_roster(roster_text)


@pytest.fixture
def regulation_log() -> MatchLog:
    return make_log(full_match_rows())


@pytest.fixture
def regulation_log_path(tmp_path, regulation_log):
    p = tmp_path / "match.log"
    p.write_text(format_log(regulation_log), encoding="utf-8")
    return p


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
