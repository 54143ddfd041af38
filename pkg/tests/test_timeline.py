import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from passnet.timeline import PeriodGroup, Window, assign, to_global, window_ending_at, windows

from conftest import ev, full_match_rows, make_log


@pytest.mark.parametrize("half, minute, expected", [(1, 0, 0), (2, 10, 55), (4, 5, 110), (3, 0, 90)])
def test_to_global(half, minute, expected):
    assert to_global(half, minute) == expected


def test_to_global_invalid_half():
    with pytest.raises(ValueError):
        to_global(5, 0)


def test_regulation_window_count(regulation_log):
    ws = windows(regulation_log, PeriodGroup.REGULATION)
    assert len(ws) == 76
    assert [w.start for w in ws] == list(range(76))
    assert [w.index for w in ws] == list(range(76))
    assert ws[-1].end == 90


def test_extra_time_window_count():
    log = make_log(full_match_rows(halves=(3, 4), per_half=15))
    ws = windows(log, PeriodGroup.EXTRA_TIME)
    assert len(ws) == 16
    assert ws[0].start == 90 and ws[-1].start == 105


def test_span_shorter_than_window():
    log = make_log([(1, m, 8, 5, 14, 5) for m in range(10)])
    assert windows(log, PeriodGroup.REGULATION) == []


def test_empty_group(regulation_log):
    assert windows(regulation_log, PeriodGroup.EXTRA_TIME) == []


def test_step_and_length():
    log = make_log(full_match_rows())
    ws = windows(log, PeriodGroup.REGULATION, length=10, step=5)
    assert [w.start for w in ws] == list(range(0, 81, 5))


@pytest.mark.parametrize("length, step", [(0, 1), (15, 0)])
def test_bad_parameters(regulation_log, length, step):
    with pytest.raises(ValueError):
        windows(regulation_log, PeriodGroup.REGULATION, length, step)


class TestAssign:
    def test_inclusive_exclusive(self):
        w = Window(0, 15)
        assert assign([ev(1, 14, 8, 5, 14, 5)], w) == [ev(1, 14, 8, 5, 14, 5)]
        assert assign([ev(1, 15, 8, 5, 14, 5)], w) == []

    def test_empty(self):
        assert assign([], Window(0, 15)) == []

    def test_group_blocks_overlap(self):
        # half 2 stoppage minute 50 sits at global 95, inside extra-time clock range
        late = ev(2, 50, 8, 5, 14, 5)
        assert assign([late], Window(90, 15, group=PeriodGroup.EXTRA_TIME)) == []
        assert assign([late], Window(90, 15, group=PeriodGroup.REGULATION)) == [late]

    def test_stoppage_overlap_shares_windows(self):
        a, b = ev(1, 47, 8, 5, 14, 5), ev(2, 2, 8, 5, 14, 5)
        assert a.global_minute == b.global_minute == 47
        assert assign([a, b], Window(40, 15)) == [a, b]


def test_window_ending_at(regulation_log):
    w = window_ending_at(regulation_log, 30)
    assert (w.start, w.end) == (15, 30)
    assert window_ending_at(regulation_log, 10) is None
    assert window_ending_at(regulation_log, 91) is None


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.tuples(st.sampled_from([1, 2]), st.integers(0, 44)), min_size=1, max_size=60
    ),
    st.integers(1, 20),
    st.integers(1, 7),
)
def test_window_properties(stamps, length, step):
    log = make_log([(h, m, 8, 5, 14, 5) for h, m in stamps])
    ws = windows(log, PeriodGroup.REGULATION, length, step)
    starts = [w.start for w in ws]
    assert all(b - a == step for a, b in zip(starts, starts[1:]))
    covered = {e.seq for w in ws for e in assign(log.events, w)}
    last = max(e.global_minute for e in log.events)
    if step == 1 and ws:
        # with unit step every event up to the last window's end is covered
        assert covered == {e.seq for e in log.events if e.global_minute < ws[-1].end}
    if step == 1 and last + 1 >= length:
        assert ws[-1].end == last + 1


def test_every_pass_in_length_over_step_windows(regulation_log):
    ws = windows(regulation_log, PeriodGroup.REGULATION, 15, 1)
    for e in regulation_log.events:
        if 14 <= e.global_minute <= 75:
            assert sum(w.contains(e) for w in ws) == 15
