from .builder import DEFAULT_MEMORY_CAP, build_index
from .reader import CorruptIndexError, IndexReader, open_index

__all__ = [
    "DEFAULT_MEMORY_CAP",
    "CorruptIndexError",
    "IndexReader",
    "build_index",
    "open_index",
]
