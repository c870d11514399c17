"""External merge sort over byte strings with a fixed memory budget.

Items accumulate in memory; when the budget is exceeded the buffer is
sorted and spilled to a temporary run file of length-prefixed items. The
final iteration k-way merges all runs plus the in-memory tail. Output
order is plain bytewise ascending, so callers encode sort keys
big-endian.
"""

from __future__ import annotations

import heapq
import tempfile
from pathlib import Path
from struct import Struct
from typing import IO, Iterator

_LEN = Struct("<I")

# Rough per-item bookkeeping overhead on top of the payload bytes.
_ITEM_OVERHEAD = 56


class ExternalSorter:
    def __init__(self, memory_budget: int = 64 << 20, tmp_dir: str | Path | None = None):
        self.memory_budget = max(memory_budget, 1 << 16)
        self.tmp_dir = str(tmp_dir) if tmp_dir is not None else None
        self._buffer: list[bytes] = []
        self._buffered_bytes = 0
        self._runs: list[IO[bytes]] = []
        self._drained = False

    @property
    def run_count(self) -> int:
        return len(self._runs)

    def add(self, item: bytes) -> None:
        if self._drained:
            raise RuntimeError("sorter already drained")
        self._buffer.append(item)
        self._buffered_bytes += len(item) + _ITEM_OVERHEAD
        if self._buffered_bytes >= self.memory_budget:
            self._spill()

    def _spill(self) -> None:
        if not self._buffer:
            return
        self._buffer.sort()
        run = tempfile.TemporaryFile(dir=self.tmp_dir)
        for item in self._buffer:
            run.write(_LEN.pack(len(item)))
            run.write(item)
        run.flush()
        run.seek(0)
        self._runs.append(run)
        self._buffer = []
        self._buffered_bytes = 0

    @staticmethod
    def _read_run(run: IO[bytes]) -> Iterator[bytes]:
        while True:
            header = run.read(_LEN.size)
            if not header:
                return
            (n,) = _LEN.unpack(header)
            yield run.read(n)

    def sorted_items(self) -> Iterator[bytes]:
        """Drain the sorter in ascending bytewise order. Single use."""
        if self._drained:
            raise RuntimeError("sorter already drained")
        self._drained = True
        self._buffer.sort()
        if not self._runs:
            yield from self._buffer
            self._buffer = []
            return
        try:
            streams = [self._read_run(r) for r in self._runs]
            streams.append(iter(self._buffer))
            yield from heapq.merge(*streams)
        finally:
            self.close()

    def close(self) -> None:
        for run in self._runs:
            run.close()
        self._runs = []
        self._buffer = []
