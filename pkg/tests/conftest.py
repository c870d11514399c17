"""Shared fixtures: the five-record F1 corpus and a built index over it.

F1 timestamps were frozen from an independent calendar check
(`date -u -d "<date> UTC" +%s`):

    2008-01-05 12:00:00 -> 1199534400
    2008-02-10 12:00:00 -> 1202644800
    2008-01-20 12:00:00 -> 1200830400
    2009-03-01 12:00:00 -> 1235908800
    2008-01-25 12:00:00 -> 1201262400
"""

from __future__ import annotations

import pytest

from tempas.index import build_index
from tempas.model import Month, Record, TimePeriod

F1_RECORDS = [
    Record("http://a.com/", 1199534400, frozenset({"obama", "election"})),
    Record("http://a.com/", 1202644800, frozenset({"obama", "politics"})),
    Record("http://b.com/", 1200830400, frozenset({"election", "news"})),
    Record("http://a.com/", 1235908800, frozenset({"obama"})),
    Record("http://c.com/", 1201262400, frozenset({"obama", "election", "news", "blog"})),
]

F1_MONTHS = [Month(2008, 1), Month(2008, 2), Month(2008, 1), Month(2009, 3), Month(2008, 1)]

YEAR_2008 = TimePeriod(Month(2008, 1), Month(2008, 12))
YEAR_2009 = TimePeriod(Month(2009, 1), Month(2009, 12))


def f1_lines() -> list[str]:
    rows = []
    for i, r in enumerate(F1_RECORDS):
        tags = ",".join(sorted(r.tags))
        rows.append(f"{'%032x' % i}\tuser{i}\t{r.url}\t{r.time}\t{tags}")
    return rows


@pytest.fixture()
def f1_index(tmp_path):
    reader = build_index(F1_RECORDS, tmp_path / "f1-index")
    yield reader
    reader.close()
