"""Retrieval and ranking over an open index.

A query is a tag set plus an inclusive month period. Three result kinds:

* related tags: tags that co-occur with every query tag somewhere in the
  period (not necessarily in the same records), scored by the total
  number of records in which they co-occur with a query tag;
* websites: sites tagged with every query tag in the period, scored by
  the total number of records tagging them with a query tag;
* versions of one site: its bookmarking events in the period that carry
  at least one query tag, ranked by query-tag overlap first, then by
  fewer total tags, then by recency.

Ties on tags and sites break by ascending text, which equals ascending
id. Titles are the site's most frequent tags in the period, independent
of the query, and are computed from the per-tag version counts only --
the timestamp payloads are never read on the sites path.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from math import log

from .index import IndexReader
from .model import Month, Query, TimePeriod, months_in, split_whole_years

DEFAULT_TAG_LIMIT = 50
DEFAULT_SITE_LIMIT = 20
DEFAULT_TITLE_TAGS = 5

WAYBACK_PREFIX = "https://web.archive.org/web/"


@dataclass(frozen=True, slots=True)
class RankedTag:
    tag: str
    score: int


@dataclass(frozen=True, slots=True)
class RankedSite:
    url: str
    score: int
    title: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class RankedVersion:
    time: int
    tags: frozenset[str]
    overlap: int

    @property
    def total_tags(self) -> int:
        return len(self.tags)


def _query_tag_ids(index: IndexReader, query: Query) -> dict[str, int] | None:
    """Resolve all query tags; None if any is unknown (empty result)."""
    ids = {}
    for tag in sorted(query.tags):
        tid = index.tag_id(tag)
        if tid is None:
            return None
        ids[tag] = tid
    return ids


def _intersect_scores(per_tag: list[dict[int, int]]) -> dict[int, int]:
    """Keys present in every accumulator, each with the summed score."""
    candidates = set(per_tag[0])
    for acc in per_tag[1:]:
        candidates &= acc.keys()
    return {c: sum(acc[c] for acc in per_tag) for c in candidates}


def retrieve_tags(index: IndexReader, query: Query, limit: int = DEFAULT_TAG_LIMIT) -> list[RankedTag]:
    """Ranked tags co-occurring with all query tags during the period."""
    if not query.tags:
        raise ValueError("retrieve_tags needs query tags; use explore_tags for empty queries")
    ids = _query_tag_ids(index, query)
    if ids is None:
        return []
    months = months_in(query.period)
    per_tag: list[dict[int, int]] = []
    for tid in ids.values():
        acc: dict[int, int] = {}
        for m in months:
            for other, count in index.lookup_tag_tag(tid, m):
                acc[other] = acc.get(other, 0) + count
        if not acc:
            return []
        per_tag.append(acc)
    scores = _intersect_scores(per_tag)
    for tid in ids.values():
        scores.pop(tid, None)
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return [RankedTag(index.resolve_tag(tid), s) for tid, s in ranked[: max(limit, 0)]]


def explore_tags(index: IndexReader, period: TimePeriod, limit: int = DEFAULT_TAG_LIMIT) -> list[RankedTag]:
    """Most used tags of the period, for exploration without query tags.

    Whole calendar years inside the period are answered from the yearly
    index, leftover months from the monthly one.
    """
    years, months = split_whole_years(period)
    acc: dict[int, int] = {}
    for y in years:
        for tid, count in index.lookup_year_tag(y):
            acc[tid] = acc.get(tid, 0) + count
    for m in months:
        for tid, count in index.lookup_month_tag(m):
            acc[tid] = acc.get(tid, 0) + count
    ranked = sorted(acc.items(), key=lambda kv: (-kv[1], kv[0]))
    return [RankedTag(index.resolve_tag(tid), s) for tid, s in ranked[: max(limit, 0)]]


def retrieve_sites(
    index: IndexReader,
    query: Query,
    limit: int = DEFAULT_SITE_LIMIT,
    offset: int = 0,
) -> list[RankedSite]:
    """Ranked sites tagged with all query tags during the period.

    Only the requested page gets titles; no version data is touched.
    """
    if not query.tags:
        raise ValueError("retrieve_sites needs query tags")
    ids = _query_tag_ids(index, query)
    if ids is None:
        return []
    months = months_in(query.period)
    per_tag: list[dict[int, int]] = []
    for tid in ids.values():
        acc: dict[int, int] = {}
        for m in months:
            for uid, count in index.lookup_tag_url(tid, m):
                acc[uid] = acc.get(uid, 0) + count
        if not acc:
            return []
        per_tag.append(acc)
    scores = _intersect_scores(per_tag)
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    page = ranked[max(offset, 0) : max(offset, 0) + max(limit, 0)]
    out = []
    for uid, score in page:
        url = index.resolve_url(uid)
        title = generate_title(index, url, query.period)
        out.append(RankedSite(url, score, tuple(title)))
    return out


def retrieve_versions(index: IndexReader, url: str, query: Query) -> list[RankedVersion]:
    """Versions of one site within the period that carry a query tag.

    Events sharing (url, timestamp) are one version with the merged tag
    set. Order: overlap desc, total tags asc, newest first.
    """
    uid = index.url_id(url)
    if uid is None:
        return []
    tag_cache: dict[int, str] = {}
    versions: dict[int, set[str]] = {}
    for m in months_in(query.period):
        for tid, stamps in index.lookup_url_tag(uid, m):
            tag = tag_cache.get(tid)
            if tag is None:
                tag = tag_cache[tid] = index.resolve_tag(tid)
            for ts in stamps:
                versions.setdefault(ts, set()).add(tag)
    out = []
    for ts, tags in versions.items():
        overlap = len(tags & query.tags)
        if overlap:
            out.append(RankedVersion(ts, frozenset(tags), overlap))
    out.sort(key=lambda v: (-v.overlap, v.total_tags, -v.time))
    return out


def generate_title(
    index: IndexReader, url: str, period: TimePeriod, k: int = DEFAULT_TITLE_TAGS
) -> list[str]:
    """Top-k tags of the site in the period by version count, query-independent."""
    uid = index.url_id(url)
    if uid is None:
        return []
    freq: dict[int, int] = {}
    for m in months_in(period):
        for tid, n in index.lookup_url_tag_counts(uid, m):
            freq[tid] = freq.get(tid, 0) + n
    ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
    return [index.resolve_tag(tid) for tid, _ in ranked[: max(k, 0)]]


def _posting_count(postings: list[tuple[int, int]], ident: int) -> int:
    """Count for one id in an id-sorted posting list, 0 if absent."""
    lo, hi = 0, len(postings)
    while lo < hi:
        mid = (lo + hi) // 2
        if postings[mid][0] < ident:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(postings) and postings[lo][0] == ident:
        return postings[lo][1]
    return 0


def score_site_pmi(index: IndexReader, url: str, query: Query) -> float:
    """Experimental alternative site score: popularity times summed PMI.

    Within the period, with a tagging being one (record, tag) incidence:
    popularity is the site's total taggings, and each query tag
    contributes log(total_taggings * site_tag_taggings /
    (site_taggings * tag_taggings)). Query tags the site never carries
    in the period are skipped. Not used by default ranking.
    """
    if not query.tags:
        raise ValueError("score_site_pmi needs query tags")
    uid = index.url_id(url)
    if uid is None:
        raise ValueError(f"url not indexed: {url}")
    months = months_in(query.period)

    site_tag_ids: set[int] = set()
    for m in months:
        site_tag_ids.update(tid for tid, _ in index.lookup_url_tag_counts(uid, m))
    site_tag_counts: dict[int, int] = {}
    for tid in site_tag_ids:
        total = 0
        for m in months:
            total += _posting_count(index.lookup_tag_url(tid, m), uid)
        site_tag_counts[tid] = total
    n_site = sum(site_tag_counts.values())

    total_taggings = 0
    for m in months:
        total_taggings += sum(count for _, count in index.lookup_month_tag(m))

    pmi = 0.0
    for tag in sorted(query.tags):
        tid = index.tag_id(tag)
        if tid is None:
            continue
        n_site_tag = site_tag_counts.get(tid, 0)
        if n_site_tag == 0:
            continue
        n_tag = 0
        for m in months:
            n_tag += _posting_count(index.lookup_month_tag(m), tid)
        pmi += log((total_taggings * n_site_tag) / (n_site * n_tag))
    return n_site * pmi


def wayback_url(url: str, ts: int) -> str:
    """Wayback Machine deep link for one version; never fetched server-side."""
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    stamp = (
        f"{dt.year:04d}{dt.month:02d}{dt.day:02d}{dt.hour:02d}{dt.minute:02d}{dt.second:02d}"
    )
    return f"{WAYBACK_PREFIX}{stamp}/{url}"


def iso_utc(ts: int) -> str:
    """ISO-8601 UTC text for a Unix timestamp."""
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    return (
        f"{dt.year:04d}-{dt.month:02d}-{dt.day:02d}"
        f"T{dt.hour:02d}:{dt.minute:02d}:{dt.second:02d}Z"
    )
