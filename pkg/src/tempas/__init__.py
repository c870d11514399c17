"""Temporal tag-based search over social bookmarking records."""

from .engine import (
    RankedSite,
    RankedTag,
    RankedVersion,
    explore_tags,
    generate_title,
    retrieve_sites,
    retrieve_tags,
    retrieve_versions,
    score_site_pmi,
    wayback_url,
)
from .index import CorruptIndexError, IndexReader, build_index, open_index
from .ingest import IngestStats, MalformedLine, parse_line, parse_path, parse_stream
from .model import Month, Query, Record, TimePeriod, month_of, months_in, record_in_period

__version__ = "0.1.0"

__all__ = [
    "CorruptIndexError",
    "IndexReader",
    "IngestStats",
    "MalformedLine",
    "Month",
    "Query",
    "RankedSite",
    "RankedTag",
    "RankedVersion",
    "Record",
    "TimePeriod",
    "build_index",
    "explore_tags",
    "generate_title",
    "month_of",
    "months_in",
    "open_index",
    "parse_line",
    "parse_path",
    "parse_stream",
    "record_in_period",
    "retrieve_sites",
    "retrieve_tags",
    "retrieve_versions",
    "score_site_pmi",
    "wayback_url",
]
