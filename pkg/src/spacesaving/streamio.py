"""Reading and writing streams, frequency manifests, and checksums.

Two stream file formats, picked by extension:

* ``.u32``: raw little-endian unsigned 32-bit integers, no header.
* ``.txt``: one decimal item per line; blank lines are ignored.

A frequency manifest is a CSV with header ``item,count`` and one row per
distinct item, sorted by item. It records a stream's exact frequencies so
evaluation does not have to recount.
"""

from __future__ import annotations

import csv
import hashlib
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .summary import U32_MAX

__all__ = [
    "file_sha256",
    "read_manifest",
    "read_stream",
    "write_manifest",
    "write_stream",
]


def _as_u32_array(values) -> np.ndarray:
    arr = values if isinstance(values, np.ndarray) else np.asarray(values, dtype=np.int64)
    if arr.dtype.kind not in "iu":
        raise ValueError(f"stream items must be integers, got dtype {arr.dtype}")
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint32)
    if arr.min() < 0 or int(arr.max()) > U32_MAX:
        raise ValueError("stream items must fit in an unsigned 32-bit integer")
    return arr.astype("<u4")


def read_stream(path) -> np.ndarray:
    """Load a stream file (``.u32`` or ``.txt``) as a uint32 array."""
    path = Path(path)
    if path.suffix == ".u32":
        blob = path.read_bytes()
        if len(blob) % 4 != 0:
            raise ValueError(f"{path}: length {len(blob)} is not a multiple of 4")
        return np.frombuffer(blob, dtype="<u4").astype(np.uint32)
    if path.suffix == ".txt":
        items = []
        for lineno, line in enumerate(path.read_text().splitlines(), start=1):
            token = line.strip()
            if not token:
                continue
            try:
                value = int(token)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not an integer: {token!r}") from None
            if value < 0 or value > U32_MAX:
                raise ValueError(f"{path}:{lineno}: item {value} out of range")
            items.append(value)
        return np.asarray(items, dtype=np.uint32)
    raise ValueError(f"{path}: unsupported stream extension {path.suffix!r}")


def write_stream(values, path) -> None:
    """Write items to a stream file; the format follows the extension."""
    path = Path(path)
    arr = _as_u32_array(values)
    if path.suffix == ".u32":
        path.write_bytes(arr.tobytes())
    elif path.suffix == ".txt":
        path.write_text("".join(f"{v}\n" for v in arr.tolist()))
    else:
        raise ValueError(f"{path}: unsupported stream extension {path.suffix!r}")


def file_sha256(path) -> str:
    """Hex SHA-256 digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(counts: Mapping[int, int], path) -> None:
    """Write exact frequencies as ``item,count`` rows sorted by item."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item", "count"])
        for item in sorted(counts):
            writer.writerow([item, counts[item]])


def read_manifest(path) -> dict[int, int]:
    """Load a frequency manifest back into a dict."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["item", "count"]:
            raise ValueError(f"{path}: expected header 'item,count', got {header}")
        counts: dict[int, int] = {}
        for row in reader:
            if not row:
                continue
            try:
                item, count = int(row[0]), int(row[1])
            except (ValueError, IndexError):
                raise ValueError(f"{path}: bad manifest row {row}") from None
            counts[item] = count
    return counts
