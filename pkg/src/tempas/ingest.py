"""Streaming parser for the tab-separated bookmark dump format.

Each input line has five tab-separated fields:

    url_md5 <TAB> user_id <TAB> url <TAB> unix_timestamp <TAB> tags

Only the last three fields are used. Tags are comma-separated inside the
fifth field; they are trimmed, lowercased and deduplicated. Lines whose
tag list is empty after normalization are skipped (every downstream
computation is tag-driven). Structurally broken lines are counted as
malformed and dropped.
"""

from __future__ import annotations

import gzip as gzip_mod
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterator

from .model import MAX_TIMESTAMP, Record


class MalformedLine(ValueError):
    """A line that cannot be turned into a valid record."""


@dataclass
class IngestStats:
    """Counters for one parse run; lines_read is always the sum of the other three."""

    lines_read: int = 0
    records_emitted: int = 0
    skipped_empty_tags: int = 0
    skipped_malformed: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "lines_read": self.lines_read,
            "records_emitted": self.records_emitted,
            "skipped_empty_tags": self.skipped_empty_tags,
            "skipped_malformed": self.skipped_malformed,
        }


def normalize_tag(raw: str) -> str | None:
    """Trim and lowercase one tag; None if nothing is left.

    Raises MalformedLine if the trimmed tag still contains whitespace or a
    comma: those characters are format delimiters and cannot occur in a
    valid tag.
    """
    tag = raw.strip().lower()
    if not tag:
        return None
    if "," in tag or any(c.isspace() for c in tag):
        raise MalformedLine(f"tag contains delimiter characters: {raw!r}")
    return tag


def parse_line(line: str) -> Record | None:
    """Parse one line (no trailing newline) into a Record.

    Returns None when the line is valid but has no tags left after
    normalization (skipped, not an error). Raises MalformedLine for
    structural problems: wrong field count, non-integer or out-of-range
    timestamp, empty URL.
    """
    fields = line.split("\t")
    if len(fields) != 5:
        raise MalformedLine(f"expected 5 tab-separated fields, got {len(fields)}")
    _, _, url, ts_text, tag_field = fields
    if not url:
        raise MalformedLine("empty URL field")
    try:
        ts = int(ts_text)
    except ValueError:
        raise MalformedLine(f"non-integer timestamp: {ts_text!r}") from None
    if not 0 <= ts <= MAX_TIMESTAMP:
        raise MalformedLine(f"timestamp out of range: {ts}")
    tags = set()
    for raw in tag_field.split(","):
        tag = normalize_tag(raw)
        if tag is not None:
            tags.add(tag)
    if not tags:
        return None
    return Record(url=url, time=ts, tags=frozenset(tags))


def parse_stream(
    stream: BinaryIO,
    *,
    gzip: bool = False,
    stats: IngestStats | None = None,
) -> Iterator[Record]:
    """Yield Records from a byte stream of dump lines, in input order.

    The caller may pass an IngestStats to collect counters; it is updated
    as lines are consumed and satisfies its conservation invariant at any
    point. I/O and decompression errors propagate and abort the stream.
    """
    if stats is None:
        stats = IngestStats()
    if gzip:
        stream = gzip_mod.open(stream, "rb")  # type: ignore[assignment]
    for raw in stream:
        stats.lines_read += 1
        line = raw.rstrip(b"\r\n")
        try:
            record = parse_line(line.decode("utf-8"))
        except (MalformedLine, UnicodeDecodeError):
            stats.skipped_malformed += 1
            continue
        if record is None:
            stats.skipped_empty_tags += 1
            continue
        stats.records_emitted += 1
        yield record


def parse_path(
    path: str | Path,
    *,
    gzip: bool | None = None,
    stats: IngestStats | None = None,
) -> Iterator[Record]:
    """Parse a dump file; gzip is sniffed from the .gz extension unless forced."""
    path = Path(path)
    if gzip is None:
        gzip = path.suffix == ".gz"
    with open(path, "rb") as fh:
        yield from parse_stream(fh, gzip=gzip, stats=stats)


def format_line(record: Record, *, url_md5: str = "0" * 32, user_id: str = "u0") -> str:
    """Serialize a Record back to the dump line format (placeholder md5/user)."""
    return "\t".join(
        [url_md5, user_id, record.url, str(record.time), ",".join(sorted(record.tags))]
    )
