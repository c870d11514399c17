"""Read-only access to a built index directory.

Opening validates the manifest (presence, format version, per-file
checksums) and scans every mapping file once to build an in-memory table
of keys and value offsets; values stay on disk (memory-mapped) and are
decoded per lookup. An open reader is immutable and safe for concurrent
readers. Absent keys yield empty posting lists, never errors.

Every lookup increments a per-mapping counter in ``lookup_counts``;
"url_tag" counts full version-posting decodes while "url_tag_counts"
counts the header-only reads used for title generation, which never
touch the timestamp payload.
"""

from __future__ import annotations

import hashlib
import mmap
from bisect import bisect_left
from collections import Counter
from pathlib import Path

from ..model import Month
from .encoding import (
    FORMAT_VERSION,
    KEY_STRUCTS,
    MANIFEST_NAME,
    MAPPING_NAMES,
    VLEN,
    decode_posting_items,
    decode_url_tag_counts,
    decode_url_tag_value,
    mapping_path,
    read_manifest,
)


class CorruptIndexError(Exception):
    """The index directory is incomplete, damaged, or inconsistent."""


class _MappingFile:
    """One key-sorted mapping file: key table in memory, values on disk."""

    def __init__(self, path: Path, name: str, expected_entries: int, expected_sha: str):
        self.name = name
        key_struct = KEY_STRUCTS[name]
        self._fh = open(path, "rb")
        size = path.stat().st_size
        self._mm = mmap.mmap(self._fh.fileno(), size, access=mmap.ACCESS_READ) if size else b""
        if hashlib.sha256(self._mm).hexdigest() != expected_sha:
            self.close()
            raise CorruptIndexError(f"checksum mismatch in {path.name}")
        self.keys: list[tuple] = []
        self._offsets: list[int] = []
        self._lengths: list[int] = []
        pos = 0
        try:
            while pos < size:
                key = key_struct.unpack_from(self._mm, pos)
                pos += key_struct.size
                (vlen,) = VLEN.unpack_from(self._mm, pos)
                pos += VLEN.size
                if pos + vlen > size:
                    raise CorruptIndexError(f"truncated entry in {path.name}")
                if self.keys and key <= self.keys[-1]:
                    raise CorruptIndexError(f"keys out of order in {path.name}")
                self.keys.append(key)
                self._offsets.append(pos)
                self._lengths.append(vlen)
                pos += vlen
        except CorruptIndexError:
            self.close()
            raise
        except Exception as exc:
            self.close()
            raise CorruptIndexError(f"cannot scan {path.name}: {exc}") from exc
        if len(self.keys) != expected_entries:
            self.close()
            raise CorruptIndexError(
                f"{path.name} has {len(self.keys)} entries, manifest says {expected_entries}"
            )

    def __len__(self) -> int:
        return len(self.keys)

    def value_at(self, i: int) -> bytes:
        off = self._offsets[i]
        return bytes(self._mm[off : off + self._lengths[i]])

    def get(self, key: tuple) -> bytes | None:
        i = bisect_left(self.keys, key)
        if i < len(self.keys) and self.keys[i] == key:
            return self.value_at(i)
        return None

    def close(self) -> None:
        if getattr(self, "_mm", None) and not isinstance(self._mm, bytes):
            self._mm.close()
        if getattr(self, "_fh", None):
            self._fh.close()


class IndexReader:
    """Handle over the seven mappings plus the manifest metadata."""

    def __init__(self, directory: str | Path):
        directory = Path(directory)
        if not (directory / MANIFEST_NAME).is_file():
            raise CorruptIndexError(f"manifest missing in {directory}")
        try:
            manifest = read_manifest(directory)
        except ValueError as exc:
            raise CorruptIndexError(f"manifest unreadable: {exc}") from exc
        version = manifest.get("format_version")
        if version != FORMAT_VERSION:
            raise CorruptIndexError(f"unsupported index format version: {version}")
        self.manifest = manifest
        self.lookup_counts: Counter[str] = Counter()
        self._maps: dict[str, _MappingFile] = {}
        try:
            for name in MAPPING_NAMES:
                info = manifest["files"].get(f"{name}.bin")
                if info is None:
                    raise CorruptIndexError(f"manifest lists no {name}.bin")
                path = mapping_path(directory, name)
                if not path.is_file():
                    raise CorruptIndexError(f"mapping file missing: {path.name}")
                self._maps[name] = _MappingFile(path, name, info["entries"], info["sha256"])
        except Exception:
            self.close()
            raise

    # -- manifest metadata ------------------------------------------------

    @property
    def record_count(self) -> int:
        return self.manifest["record_count"]

    @property
    def tag_count(self) -> int:
        return self.manifest["tag_count"]

    @property
    def url_count(self) -> int:
        return self.manifest["url_count"]

    @property
    def month_min(self) -> Month | None:
        raw = self.manifest["month_min"]
        return Month.parse(raw) if raw else None

    @property
    def month_max(self) -> Month | None:
        raw = self.manifest["month_max"]
        return Month.parse(raw) if raw else None

    def entry_counts(self) -> dict[str, int]:
        return {name: len(self._maps[name]) for name in MAPPING_NAMES}

    # -- id mappings -------------------------------------------------------

    def _resolve(self, name: str, ident: int) -> str:
        mapping = self._maps[name]
        if not 0 <= ident < len(mapping):
            raise CorruptIndexError(f"{name} id out of range: {ident}")
        return mapping.value_at(ident).decode("utf-8")

    def resolve_tag(self, tag_id: int) -> str:
        self.lookup_counts["resolve_tag"] += 1
        return self._resolve("id_tag", tag_id)

    def resolve_url(self, url_id: int) -> str:
        self.lookup_counts["resolve_url"] += 1
        return self._resolve("id_url", url_id)

    def _text_id(self, name: str, text: str) -> int | None:
        mapping = self._maps[name]
        needle = text.encode("utf-8")
        lo, hi = 0, len(mapping)
        while lo < hi:
            mid = (lo + hi) // 2
            if mapping.value_at(mid) < needle:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(mapping) and mapping.value_at(lo) == needle:
            return lo
        return None

    def tag_id(self, tag: str) -> int | None:
        self.lookup_counts["tag_id"] += 1
        return self._text_id("id_tag", tag)

    def url_id(self, url: str) -> int | None:
        self.lookup_counts["url_id"] += 1
        return self._text_id("id_url", url)

    # -- posting lookups ----------------------------------------------------

    def lookup_tag_tag(self, tag_id: int, month: Month) -> list[tuple[int, int]]:
        self.lookup_counts["tag_tag"] += 1
        buf = self._maps["tag_tag"].get((tag_id, month.year, month.month))
        return decode_posting_items(buf) if buf else []

    def lookup_tag_url(self, tag_id: int, month: Month) -> list[tuple[int, int]]:
        self.lookup_counts["tag_url"] += 1
        buf = self._maps["tag_url"].get((tag_id, month.year, month.month))
        return decode_posting_items(buf) if buf else []

    def lookup_url_tag(self, url_id: int, month: Month) -> list[tuple[int, tuple[int, ...]]]:
        self.lookup_counts["url_tag"] += 1
        buf = self._maps["url_tag"].get((url_id, month.year, month.month))
        return decode_url_tag_value(buf) if buf else []

    def lookup_url_tag_counts(self, url_id: int, month: Month) -> list[tuple[int, int]]:
        self.lookup_counts["url_tag_counts"] += 1
        buf = self._maps["url_tag"].get((url_id, month.year, month.month))
        return decode_url_tag_counts(buf) if buf else []

    def lookup_month_tag(self, month: Month) -> list[tuple[int, int]]:
        self.lookup_counts["month_tag"] += 1
        buf = self._maps["month_tag"].get((month.year, month.month))
        return decode_posting_items(buf) if buf else []

    def lookup_year_tag(self, year: int) -> list[tuple[int, int]]:
        self.lookup_counts["year_tag"] += 1
        buf = self._maps["year_tag"].get((year,))
        return decode_posting_items(buf) if buf else []

    # -- lifecycle -----------------------------------------------------------

    def close(self) -> None:
        for mapping in self._maps.values():
            mapping.close()
        self._maps = {}

    def __enter__(self) -> "IndexReader":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def open_index(directory: str | Path) -> IndexReader:
    """Open a complete index directory, validating manifest and checksums."""
    return IndexReader(directory)
