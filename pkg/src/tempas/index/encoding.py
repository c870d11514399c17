"""On-disk layout of the seven index mappings.

Each mapping lives in one file as a key-sorted sequence of entries:

    fixed-width key | u32 value byte length | value bytes

All integers are little-endian. Ids and counts are u32, years u16,
months u8, timestamps i64. Posting-list values are concatenations of
fixed-width items sorted by id. The version mapping (url_tag) splits its
value into a header block of (tag id, timestamp count) pairs followed by
the concatenated timestamp payload, so per-tag counts can be read
without touching the timestamps.

A JSON manifest records the format version, corpus-level counts, the
indexed month span, and per-file entry counts and SHA-256 checksums. An
index directory without a manifest is never complete.
"""

from __future__ import annotations

import json
from pathlib import Path
from struct import Struct

FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"

KEY_STRUCTS: dict[str, Struct] = {
    "id_tag": Struct("<I"),     # tag id -> tag text
    "id_url": Struct("<I"),     # url id -> url text
    "tag_tag": Struct("<IHB"),  # (tag id, year, month) -> co-occurring (tag id, count)
    "year_tag": Struct("<H"),   # year -> (tag id, occurrence count)
    "month_tag": Struct("<HB"),  # (year, month) -> (tag id, occurrence count)
    "tag_url": Struct("<IHB"),  # (tag id, year, month) -> (url id, tagging count)
    "url_tag": Struct("<IHB"),  # (url id, year, month) -> (tag id, timestamp set)
}
MAPPING_NAMES = tuple(KEY_STRUCTS)

VLEN = Struct("<I")
ITEM = Struct("<II")
TS = Struct("<q")
COUNT = Struct("<I")


def mapping_path(directory: Path, name: str) -> Path:
    return directory / f"{name}.bin"


def encode_posting_items(items: list[tuple[int, int]]) -> bytes:
    return b"".join(ITEM.pack(ident, count) for ident, count in items)


def decode_posting_items(buf: bytes) -> list[tuple[int, int]]:
    return [ITEM.unpack_from(buf, off) for off in range(0, len(buf), ITEM.size)]


def encode_url_tag_value(items: list[tuple[int, list[int]]]) -> bytes:
    """items: (tag id, ascending timestamps), sorted by tag id."""
    parts = [COUNT.pack(len(items))]
    parts.extend(ITEM.pack(tid, len(stamps)) for tid, stamps in items)
    for _, stamps in items:
        parts.extend(TS.pack(t) for t in stamps)
    return b"".join(parts)


def decode_url_tag_counts(buf: bytes) -> list[tuple[int, int]]:
    """Header block only: (tag id, number of timestamps) per tag."""
    (n,) = COUNT.unpack_from(buf, 0)
    return [ITEM.unpack_from(buf, COUNT.size + i * ITEM.size) for i in range(n)]


def decode_url_tag_value(buf: bytes) -> list[tuple[int, tuple[int, ...]]]:
    header = decode_url_tag_counts(buf)
    pos = COUNT.size + len(header) * ITEM.size
    out = []
    for tid, n_ts in header:
        stamps = tuple(
            TS.unpack_from(buf, pos + i * TS.size)[0] for i in range(n_ts)
        )
        pos += n_ts * TS.size
        out.append((tid, stamps))
    return out


def write_manifest(directory: Path, manifest: dict) -> None:
    text = json.dumps(manifest, indent=2, sort_keys=True)
    (directory / MANIFEST_NAME).write_text(text + "\n", encoding="utf-8")


def read_manifest(directory: Path) -> dict:
    return json.loads((directory / MANIFEST_NAME).read_text(encoding="utf-8"))
