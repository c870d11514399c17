"""Brute-force reference implementation used as the test oracle.

Everything here works by directly scanning a list of Records and
applying the retrieval and ranking definitions literally; it never
touches the index machinery, so index/engine results can be checked
against it. Period membership is month granular, matching the engine.

Tie-breaks mirror the documented ones: tags and sites order by score
descending then text ascending; versions by overlap descending, total
tags ascending, timestamp descending.
"""

from __future__ import annotations

from math import log

from tempas.model import Query, Record, TimePeriod, month_of, months_in


def records_in_period(records: list[Record], period: TimePeriod) -> list[Record]:
    months = set(months_in(period))
    return [r for r in records if month_of(r.time) in months]


def matching(records: list[Record], tag: str, period: TimePeriod) -> list[Record]:
    """Records in the period whose tag set contains the given tag."""
    return [r for r in records_in_period(records, period) if tag in r.tags]


def rel_tags(records: list[Record], query: Query) -> dict[str, int]:
    """Candidate related tags with scores; empty query tags not allowed."""
    assert query.tags
    candidate_sets = []
    per_tag_records = {}
    for t in query.tags:
        matched = matching(records, t, query.period)
        per_tag_records[t] = matched
        seen = set()
        for r in matched:
            seen.update(r.tags)
        candidate_sets.append(seen)
    candidates = set.intersection(*candidate_sets) - query.tags
    return {
        tau: sum(
            sum(1 for r in per_tag_records[t] if tau in r.tags) for t in query.tags
        )
        for tau in candidates
    }


def ranked_tags(records: list[Record], query: Query, limit: int) -> list[tuple[str, int]]:
    scores = rel_tags(records, query)
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return ordered[: max(limit, 0)]


def rel_sites(records: list[Record], query: Query) -> dict[str, int]:
    assert query.tags
    candidate_sets = []
    per_tag_records = {}
    for t in query.tags:
        matched = matching(records, t, query.period)
        per_tag_records[t] = matched
        candidate_sets.append({r.url for r in matched})
    candidates = set.intersection(*candidate_sets)
    return {
        s: sum(sum(1 for r in per_tag_records[t] if r.url == s) for t in query.tags)
        for s in candidates
    }


def ranked_sites(
    records: list[Record], query: Query, limit: int, offset: int = 0
) -> list[tuple[str, int]]:
    scores = rel_sites(records, query)
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return ordered[max(offset, 0) : max(offset, 0) + max(limit, 0)]


def merged_versions(records: list[Record], url: str, period: TimePeriod) -> dict[int, set[str]]:
    """Versions of one site in the period; same-timestamp events merge their tags."""
    versions: dict[int, set[str]] = {}
    for r in records_in_period(records, period):
        if r.url == url:
            versions.setdefault(r.time, set()).update(r.tags)
    return versions


def ranked_versions(
    records: list[Record], url: str, query: Query
) -> list[tuple[int, frozenset[str], int]]:
    """(time, tags, overlap), versions carrying at least one query tag."""
    out = []
    for ts, tags in merged_versions(records, url, query.period).items():
        overlap = len(tags & query.tags)
        if overlap:
            out.append((ts, frozenset(tags), overlap))
    out.sort(key=lambda v: (-v[2], len(v[1]), -v[0]))
    return out


def explore_counts(records: list[Record], period: TimePeriod) -> dict[str, int]:
    counts: dict[str, int] = {}
    for r in records_in_period(records, period):
        for t in r.tags:
            counts[t] = counts.get(t, 0) + 1
    return counts


def ranked_explore(records: list[Record], period: TimePeriod, limit: int) -> list[tuple[str, int]]:
    counts = explore_counts(records, period)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ordered[: max(limit, 0)]


def title(records: list[Record], url: str, period: TimePeriod, k: int = 5) -> list[str]:
    """Most frequent tags over the site's merged versions in the period."""
    freq: dict[str, int] = {}
    for tags in merged_versions(records, url, period).values():
        for t in tags:
            freq[t] = freq.get(t, 0) + 1
    ordered = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
    return [t for t, _ in ordered[: max(k, 0)]]


def pmi_score(records: list[Record], url: str, query: Query) -> float:
    """Popularity times summed pointwise mutual information, record-counted."""
    in_period = records_in_period(records, query.period)
    total_taggings = sum(len(r.tags) for r in in_period)
    site_records = [r for r in in_period if r.url == url]
    n_site = sum(len(r.tags) for r in site_records)
    score = 0.0
    for t in query.tags:
        n_site_tag = sum(1 for r in site_records if t in r.tags)
        if n_site_tag == 0:
            continue
        n_tag = sum(1 for r in in_period if t in r.tags)
        score += log((total_taggings * n_site_tag) / (n_site * n_tag))
    return n_site * score
