"""Month arithmetic and period membership."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tempas.model import (
    MAX_TIMESTAMP,
    Month,
    Record,
    TimePeriod,
    month_of,
    months_in,
    record_in_period,
    split_whole_years,
)

from conftest import F1_MONTHS, F1_RECORDS

months_st = st.builds(
    Month, st.integers(min_value=1970, max_value=2100), st.integers(min_value=1, max_value=12)
)
timestamps_st = st.integers(min_value=0, max_value=MAX_TIMESTAMP)


class TestMonthOf:
    def test_epoch_origin(self):
        assert month_of(0) == Month(1970, 1)

    def test_first_second_of_february_1970(self):
        assert month_of(31 * 86400) == Month(1970, 2)

    def test_f1_timestamps(self):
        # Dates and expected months from the frozen calendar-oracle table.
        for record, month in zip(F1_RECORDS, F1_MONTHS):
            assert month_of(record.time) == month

    @given(t1=timestamps_st, t2=timestamps_st)
    def test_monotone(self, t1, t2):
        if t1 > t2:
            t1, t2 = t2, t1
        assert month_of(t1) <= month_of(t2)


class TestMonthsIn:
    def test_singleton_period(self):
        m = Month(2008, 1)
        assert months_in(TimePeriod(m, m)) == [m]

    def test_year_boundary_crossing(self):
        got = months_in(TimePeriod(Month(2007, 11), Month(2008, 2)))
        assert got == [Month(2007, 11), Month(2007, 12), Month(2008, 1), Month(2008, 2)]

    def test_four_year_span_has_48_months(self):
        assert len(months_in(TimePeriod(Month(2005, 1), Month(2008, 12)))) == 48

    @given(a=months_st, b=months_st)
    def test_ascending_with_both_endpoints(self, a, b):
        if a > b:
            a, b = b, a
        period = TimePeriod(a, b)
        ms = months_in(period)
        assert ms[0] == a and ms[-1] == b
        assert all(x < y for x, y in zip(ms, ms[1:]))
        delta = 12 * (b.year - a.year) + (b.month - a.month)
        assert len(ms) == delta + 1


class TestRecordInPeriod:
    def test_boundary_month_inclusive(self):
        r = Record("http://x/", F1_RECORDS[0].time, frozenset({"a"}))
        assert record_in_period(r, TimePeriod(Month(2008, 1), Month(2008, 12)))

    def test_outside_period(self):
        r = Record("http://x/", F1_RECORDS[3].time, frozenset({"a"}))  # 2009-03
        assert not record_in_period(r, TimePeriod(Month(2008, 1), Month(2008, 12)))

    def test_last_second_of_period(self):
        # 2008-12-31 23:59:59 UTC, from the calendar oracle.
        r = Record("http://x/", 1230767999, frozenset({"a"}))
        assert record_in_period(r, TimePeriod(Month(2008, 1), Month(2008, 12)))

    @given(t=timestamps_st, a=months_st, b=months_st)
    def test_matches_month_enumeration(self, t, a, b):
        if a > b:
            a, b = b, a
        period = TimePeriod(a, b)
        r = Record("http://x/", t, frozenset({"a"}))
        assert record_in_period(r, period) == (month_of(t) in set(months_in(period)))


class TestTypes:
    def test_month_ordering_is_year_then_month(self):
        assert Month(2007, 12) < Month(2008, 1) < Month(2008, 2)

    def test_month_text_round_trip(self):
        assert str(Month.parse("2008-01")) == "2008-01"

    @pytest.mark.parametrize("text", ["2008-1", "2008/01", "200801", "2008-13", "x"])
    def test_month_parse_rejects(self, text):
        with pytest.raises(ValueError):
            Month.parse(text)

    def test_period_rejects_inverted(self):
        with pytest.raises(ValueError):
            TimePeriod(Month(2009, 1), Month(2008, 1))

    def test_record_rejects_empty_tags(self):
        with pytest.raises(ValueError):
            Record("http://x/", 0, frozenset())

    def test_record_rejects_negative_time(self):
        with pytest.raises(ValueError):
            Record("http://x/", -1, frozenset({"a"}))


class TestSplitWholeYears:
    def test_full_year(self):
        years, months = split_whole_years(TimePeriod(Month(2008, 1), Month(2008, 12)))
        assert years == [2008] and months == []

    def test_partial_both_ends(self):
        years, months = split_whole_years(TimePeriod(Month(2007, 11), Month(2009, 2)))
        assert years == [2008]
        assert months == [Month(2007, 11), Month(2007, 12), Month(2009, 1), Month(2009, 2)]

    @given(a=months_st, b=months_st)
    def test_partition_covers_period_exactly(self, a, b):
        if a > b:
            a, b = b, a
        period = TimePeriod(a, b)
        years, months = split_whole_years(period)
        rebuilt = set(months)
        for y in years:
            rebuilt.update(Month(y, m) for m in range(1, 13))
        assert rebuilt == set(months_in(period))
        assert len(months) + 12 * len(years) == len(months_in(period))
