"""Domain types and UTC month arithmetic shared by all other modules.

A record is one bookmarking event: a website URL, a Unix timestamp and a
set of tags. Each record counts as one "version" of the website. Queries
select records by tag set and by an inclusive range of calendar months;
all time math is UTC month granular.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime, timezone

# Largest timestamp with a representable UTC calendar date (9999-12-31T23:59:59Z).
MAX_TIMESTAMP = 253402300799

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True, slots=True)
class Month:
    """A UTC calendar month; ordering is (year, month) lexicographic."""

    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @classmethod
    def parse(cls, text: str) -> "Month":
        """Parse the 'YYYY-MM' text form used in CLI flags, API params and index keys."""
        m = _MONTH_RE.match(text)
        if not m:
            raise ValueError(f"not a YYYY-MM month: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def next(self) -> "Month":
        if self.month == 12:
            return Month(self.year + 1, 1)
        return Month(self.year, self.month + 1)


@dataclass(frozen=True, slots=True)
class TimePeriod:
    """Inclusive month range; start must not exceed end."""

    start: Month
    end: Month

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"period start {self.start} after end {self.end}")

    def __str__(self) -> str:
        return f"{self.start}..{self.end}"


@dataclass(frozen=True, slots=True)
class Record:
    """One bookmarking event: (url, time, tags). Tags are normalized and deduplicated."""

    url: str
    time: int
    tags: frozenset[str]

    def __post_init__(self) -> None:
        if not self.url or "\t" in self.url:
            raise ValueError(f"invalid url: {self.url!r}")
        if not 0 <= self.time <= MAX_TIMESTAMP:
            raise ValueError(f"timestamp out of range: {self.time}")
        if not self.tags:
            raise ValueError("record has no tags")


@dataclass(frozen=True, slots=True)
class Query:
    """A tag set (may be empty, meaning pure time exploration) plus a month period."""

    tags: frozenset[str]
    period: TimePeriod


def month_of(ts: int) -> Month:
    """UTC calendar month containing the given Unix timestamp."""
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    return Month(dt.year, dt.month)


def months_in(period: TimePeriod) -> list[Month]:
    """All months start <= m <= end, ascending."""
    out = []
    m = period.start
    while m <= period.end:
        out.append(m)
        m = m.next()
    return out


def record_in_period(record: Record, period: TimePeriod) -> bool:
    """Month-granular containment: the record's month falls inside the period."""
    return period.start <= month_of(record.time) <= period.end


def split_whole_years(period: TimePeriod) -> tuple[list[int], list[Month]]:
    """Split a period into fully covered calendar years and the leftover months.

    Used by time exploration: whole years are answered from the per-year
    index, leftover months from the per-month index.
    """
    years = []
    for y in range(period.start.year, period.end.year + 1):
        first_whole = y > period.start.year or period.start.month == 1
        last_whole = y < period.end.year or period.end.month == 12
        if first_whole and last_whole:
            years.append(y)
    months = [m for m in months_in(period) if m.year not in set(years)]
    return years, months
