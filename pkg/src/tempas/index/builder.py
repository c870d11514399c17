"""Single-node two-pass index build.

Pass 1 spools the incoming records to a temporary log and collects the
tag and URL vocabularies; sorting the vocabularies assigns consecutive
ids in lexicographic text order. Pass 2 rereads the spool and emits one
fixed-width event per index fact into per-mapping external sorters;
merging each sorter yields the facts grouped by key, where duplicate
events are counted (co-occurrences, occurrences, taggings) or collapsed
(timestamp sets). Mapping files are written in key order with checksums
computed on the fly; the manifest is written last, so an interrupted
build never looks complete.
"""

from __future__ import annotations

import hashlib
import tempfile
from pathlib import Path
from struct import Struct
from typing import IO, Iterable, Iterator

from ..model import Month, Record, month_of
from .encoding import (
    FORMAT_VERSION,
    KEY_STRUCTS,
    VLEN,
    encode_posting_items,
    encode_url_tag_value,
    mapping_path,
    write_manifest,
)
from .reader import IndexReader, open_index
from .sorter import ExternalSorter

DEFAULT_MEMORY_CAP = 1 << 30

# Spool record framing.
_SP_HEAD = Struct("<qI")   # time, url byte length
_SP_NTAGS = Struct("<H")
_SP_TLEN = Struct("<H")

# Big-endian event layouts; bytewise order equals logical key order.
_EV_TAG_TAG = Struct(">IHBI")    # tag a, year, month, tag b
_EV_YEAR = Struct(">HI")         # year, tag
_EV_MONTH = Struct(">HBI")       # year, month, tag
_EV_TAG_URL = Struct(">IHBI")    # tag, year, month, url
_EV_URL_TAG = Struct(">IHBIq")   # url, year, month, tag, timestamp


class _HashingWriter:
    """File writer that maintains a SHA-256 of everything written."""

    def __init__(self, path: Path):
        self._fh = open(path, "wb")
        self._hash = hashlib.sha256()
        self.entries = 0

    def write_entry(self, key: bytes, value: bytes) -> None:
        payload = key + VLEN.pack(len(value)) + value
        self._fh.write(payload)
        self._hash.update(payload)
        self.entries += 1

    def close(self) -> str:
        self._fh.close()
        return self._hash.hexdigest()


def _spool_records(records: Iterable[Record], spool: IO[bytes]) -> tuple[set[str], set[str], int]:
    tags: set[str] = set()
    urls: set[str] = set()
    count = 0
    for record in records:
        url_bytes = record.url.encode("utf-8")
        spool.write(_SP_HEAD.pack(record.time, len(url_bytes)))
        spool.write(url_bytes)
        spool.write(_SP_NTAGS.pack(len(record.tags)))
        for tag in record.tags:
            tag_bytes = tag.encode("utf-8")
            spool.write(_SP_TLEN.pack(len(tag_bytes)))
            spool.write(tag_bytes)
        urls.add(record.url)
        tags.update(record.tags)
        count += 1
    return tags, urls, count


def _read_spool(spool: IO[bytes]) -> Iterator[tuple[int, str, list[str]]]:
    while True:
        head = spool.read(_SP_HEAD.size)
        if not head:
            return
        time, url_len = _SP_HEAD.unpack(head)
        url = spool.read(url_len).decode("utf-8")
        (n_tags,) = _SP_NTAGS.unpack(spool.read(_SP_NTAGS.size))
        tags = []
        for _ in range(n_tags):
            (tlen,) = _SP_TLEN.unpack(spool.read(_SP_TLEN.size))
            tags.append(spool.read(tlen).decode("utf-8"))
        yield time, url, tags


def _write_id_mapping(path: Path, texts: list[str]) -> tuple[int, str]:
    key_struct = KEY_STRUCTS["id_tag"]
    writer = _HashingWriter(path)
    try:
        for ident, text in enumerate(texts):
            writer.write_entry(key_struct.pack(ident), text.encode("utf-8"))
    finally:
        digest = writer.close()
    return len(texts), digest


def _write_counted(
    path: Path, key_struct: Struct, events: Iterator[bytes], event_struct: Struct
) -> tuple[int, str]:
    """Aggregate sorted events (group key + member id) into posting entries.

    Identical events are counted; the final event field is the posting
    member, everything before it the entry key.
    """
    writer = _HashingWriter(path)
    try:
        group: tuple | None = None
        items: list[tuple[int, int]] = []
        prev_member: int | None = None
        run = 0
        for raw in events:
            fields = event_struct.unpack(raw)
            key, member = fields[:-1], fields[-1]
            if key != group:
                if group is not None:
                    items.append((prev_member, run))
                    writer.write_entry(key_struct.pack(*group), encode_posting_items(items))
                group, items, prev_member, run = key, [], member, 1
            elif member != prev_member:
                items.append((prev_member, run))
                prev_member, run = member, 1
            else:
                run += 1
        if group is not None:
            items.append((prev_member, run))
            writer.write_entry(key_struct.pack(*group), encode_posting_items(items))
    finally:
        digest = writer.close()
    return writer.entries, digest


def _write_url_tag(path: Path, events: Iterator[bytes]) -> tuple[int, str]:
    """Collapse sorted (url, year, month, tag, timestamp) events into timestamp sets."""
    key_struct = KEY_STRUCTS["url_tag"]
    writer = _HashingWriter(path)
    try:
        group: tuple | None = None
        items: list[tuple[int, list[int]]] = []
        prev: tuple | None = None
        for raw in events:
            if raw == prev:
                continue  # set semantics: same (url, month, tag, timestamp)
            prev = raw
            uid, year, month, tid, ts = _EV_URL_TAG.unpack(raw)
            key = (uid, year, month)
            if key != group:
                if group is not None:
                    writer.write_entry(key_struct.pack(*group), encode_url_tag_value(items))
                group, items = key, []
            if items and items[-1][0] == tid:
                items[-1][1].append(ts)
            else:
                items.append((tid, [ts]))
        if group is not None:
            writer.write_entry(key_struct.pack(*group), encode_url_tag_value(items))
    finally:
        digest = writer.close()
    return writer.entries, digest


def build_index(
    records: Iterable[Record],
    out_dir: str | Path,
    *,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    tmp_dir: str | Path | None = None,
) -> IndexReader:
    """Build all seven mappings from a record stream and open the result."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files: dict[str, dict] = {}
    month_min: Month | None = None
    month_max: Month | None = None

    with tempfile.TemporaryFile(dir=str(tmp_dir) if tmp_dir else None) as spool:
        tag_texts, url_texts, record_count = _spool_records(records, spool)
        spool.flush()
        spool.seek(0)

        sorted_tags = sorted(tag_texts)
        sorted_urls = sorted(url_texts)
        tag_ids = {t: i for i, t in enumerate(sorted_tags)}
        url_ids = {u: i for i, u in enumerate(sorted_urls)}
        for name, texts in (("id_tag", sorted_tags), ("id_url", sorted_urls)):
            entries, digest = _write_id_mapping(mapping_path(out_dir, name), texts)
            files[name] = {"entries": entries, "sha256": digest}

        budget = max(memory_cap // 5, 1 << 16)
        sorters = {
            name: ExternalSorter(budget, tmp_dir=tmp_dir)
            for name in ("tag_tag", "year_tag", "month_tag", "tag_url", "url_tag")
        }
        for time, url, tags in _read_spool(spool):
            m = month_of(time)
            if month_min is None or m < month_min:
                month_min = m
            if month_max is None or m > month_max:
                month_max = m
            uid = url_ids[url]
            tids = sorted(tag_ids[t] for t in tags)
            for tid in tids:
                sorters["year_tag"].add(_EV_YEAR.pack(m.year, tid))
                sorters["month_tag"].add(_EV_MONTH.pack(m.year, m.month, tid))
                sorters["tag_url"].add(_EV_TAG_URL.pack(tid, m.year, m.month, uid))
                sorters["url_tag"].add(_EV_URL_TAG.pack(uid, m.year, m.month, tid, time))
            for a in tids:
                for b in tids:
                    if a != b:
                        sorters["tag_tag"].add(_EV_TAG_TAG.pack(a, m.year, m.month, b))

        jobs = (
            ("tag_tag", _EV_TAG_TAG),
            ("year_tag", _EV_YEAR),
            ("month_tag", _EV_MONTH),
            ("tag_url", _EV_TAG_URL),
        )
        for name, event_struct in jobs:
            entries, digest = _write_counted(
                mapping_path(out_dir, name),
                KEY_STRUCTS[name],
                sorters[name].sorted_items(),
                event_struct,
            )
            files[name] = {"entries": entries, "sha256": digest}
        entries, digest = _write_url_tag(
            mapping_path(out_dir, "url_tag"), sorters["url_tag"].sorted_items()
        )
        files["url_tag"] = {"entries": entries, "sha256": digest}

    write_manifest(
        out_dir,
        {
            "format_version": FORMAT_VERSION,
            "record_count": record_count,
            "tag_count": len(sorted_tags),
            "url_count": len(sorted_urls),
            "month_min": str(month_min) if month_min else None,
            "month_max": str(month_max) if month_max else None,
            "files": {f"{name}.bin": info for name, info in sorted(files.items())},
        },
    )
    return open_index(out_dir)
