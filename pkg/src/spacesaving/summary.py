"""Bounded frequency summaries over integer streams.

A summary holds at most k counters. Monitored items carry an estimated
frequency and an error term bounding the overestimate; when a new item
arrives at a full summary it takes over the minimum counter, inheriting its
frequency as the error. Estimates never undercount: for every monitored item
``est_freq - err <= exact <= est_freq``, unmonitored items are bounded by the
minimum frequency, and the frequency total equals the stream length.
"""

from __future__ import annotations

import heapq
import struct
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from . import _kernels

U32_MAX = 2**32 - 1
U64_MAX = 2**64 - 1

_MAGIC = b"SSS1"
_HEADER = struct.Struct("<4sII")
_RECORD = np.dtype([("item", "<u4"), ("est_freq", "<u8"), ("err", "<u8")])


@dataclass(frozen=True)
class CounterEntry:
    """One monitored item with its frequency estimate and error bound."""

    item: int
    est_freq: int
    err: int


@dataclass(frozen=True)
class ReportEntry:
    item: int
    est_freq: int
    err: int
    guaranteed: bool


@dataclass(frozen=True)
class FrequentReport:
    """Candidate frequent items and the threshold they were tested against.

    Entries produced by :func:`prune` all satisfy ``est_freq >= threshold``
    and are flagged guaranteed when ``est_freq - err >= threshold``; reports
    assembled from raw merged counters (the baseline strategy) skip the
    filter, carry ``threshold == 0``, and are never guaranteed.
    """

    entries: tuple[ReportEntry, ...]
    threshold: int


def _check_item(x) -> int:
    x = int(x)
    if not 0 <= x <= U32_MAX:
        raise ValueError(f"item {x} outside the unsigned 32-bit range")
    return x


class Summary:
    """Mutable counter set; single-owner, transferable by value.

    Lookup by item is a dict; the eviction victim (smallest frequency, ties
    to the smallest item) comes from a lazily pruned heap. ``counters()``
    yields the canonical ascending (est_freq, item) order.
    """

    __slots__ = ("k", "_counts", "_heap")

    def __init__(self, k: int):
        k = int(k)
        if k < 1:
            raise ValueError("capacity must be at least 1")
        self.k = k
        self._counts: dict[int, list[int]] = {}
        self._heap: list[tuple[int, int]] = []

    @property
    def nz(self) -> int:
        return len(self._counts)

    def update(self, x) -> "Summary":
        x = _check_item(x)
        counts = self._counts
        cell = counts.get(x)
        if cell is not None:
            cell[0] += 1
            heapq.heappush(self._heap, (cell[0], x))
        elif len(counts) < self.k:
            counts[x] = [1, 0]
            heapq.heappush(self._heap, (1, x))
        else:
            f, victim = self._pop_min()
            del counts[victim]
            counts[x] = [f + 1, f]
            heapq.heappush(self._heap, (f + 1, x))
        if len(self._heap) > 64 + 4 * len(counts):
            self._rebuild_heap()
        return self

    def _pop_min(self) -> tuple[int, int]:
        heap = self._heap
        counts = self._counts
        while heap:
            f, item = heap[0]
            cell = counts.get(item)
            if cell is not None and cell[0] == f:
                heapq.heappop(heap)
                return f, item
            heapq.heappop(heap)
        raise RuntimeError("eviction from an empty summary")

    def _peek_min(self) -> tuple[int, int]:
        heap = self._heap
        counts = self._counts
        while heap:
            f, item = heap[0]
            cell = counts.get(item)
            if cell is not None and cell[0] == f:
                return f, item
            heapq.heappop(heap)
        raise RuntimeError("peek into an empty summary")

    def _rebuild_heap(self) -> None:
        self._heap = [(cell[0], item) for item, cell in self._counts.items()]
        heapq.heapify(self._heap)

    def min_frequency(self) -> int:
        if len(self._counts) < self.k:
            return 0
        return self._peek_min()[0]

    def point_estimate(self, x) -> Optional[tuple[int, int]]:
        cell = self._counts.get(int(x))
        if cell is None:
            return None
        return cell[0], cell[1]

    def counters(self) -> list[CounterEntry]:
        out = [
            CounterEntry(item, cell[0], cell[1])
            for item, cell in self._counts.items()
        ]
        out.sort(key=lambda c: (c.est_freq, c.item))
        return out

    def total_mass(self) -> int:
        return sum(cell[0] for cell in self._counts.values())

    def __iter__(self) -> Iterator[CounterEntry]:
        return iter(self.counters())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Summary):
            return NotImplemented
        return self.k == other.k and self._as_tuples() == other._as_tuples()

    def __repr__(self) -> str:
        return f"Summary(k={self.k}, nz={self.nz})"

    def _as_tuples(self) -> list[tuple[int, int, int]]:
        return [(c.est_freq, c.item, c.err) for c in self.counters()]

    @classmethod
    def from_counters(cls, k: int, counters: Iterable[CounterEntry]) -> "Summary":
        s = cls(k)
        counts = s._counts
        for c in counters:
            item = _check_item(c.item)
            est, err = int(c.est_freq), int(c.err)
            if not 1 <= est <= U64_MAX:
                raise ValueError(f"est_freq {est} out of range")
            if not 0 <= err <= U64_MAX:
                raise ValueError(f"err {err} out of range")
            if item in counts:
                raise ValueError(f"duplicate item {item}")
            counts[item] = [est, err]
        if len(counts) > k:
            raise ValueError(f"{len(counts)} counters exceed capacity {k}")
        s._rebuild_heap()
        return s

    @classmethod
    def _from_arrays(cls, k: int, items, freqs, errs) -> "Summary":
        s = cls(k)
        s._counts = {
            int(i): [int(f), int(e)] for i, f, e in zip(items, freqs, errs)
        }
        s._rebuild_heap()
        return s

    # -- wire format ------------------------------------------------------
    # little-endian: magic "SSS1", k u32, nz u32, then nz records of
    # (item u32, est_freq u64, err u64) ascending by (est_freq, item).

    def to_bytes(self) -> bytes:
        counters = self.counters()
        records = np.empty(len(counters), dtype=_RECORD)
        for i, c in enumerate(counters):
            records[i] = (c.item, c.est_freq, c.err)
        return _HEADER.pack(_MAGIC, self.k, len(counters)) + records.tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes) -> "Summary":
        if len(blob) < _HEADER.size:
            raise ValueError("summary blob shorter than its header")
        magic, k, nz = _HEADER.unpack_from(blob)
        if magic != _MAGIC:
            raise ValueError("bad summary magic")
        if nz > k:
            raise ValueError(f"{nz} counters exceed capacity {k}")
        expected = _HEADER.size + nz * _RECORD.itemsize
        if len(blob) != expected:
            raise ValueError(f"summary blob is {len(blob)} bytes, expected {expected}")
        records = np.frombuffer(blob, dtype=_RECORD, offset=_HEADER.size)
        keys = [(int(r["est_freq"]), int(r["item"])) for r in records]
        if any(b <= a for a, b in zip(keys, keys[1:])):
            raise ValueError("summary records out of order or duplicated")
        return cls.from_counters(
            k,
            (
                CounterEntry(int(r["item"]), int(r["est_freq"]), int(r["err"]))
                for r in records
            ),
        )


def new_summary(k: int) -> Summary:
    """Create an empty summary; capacities below 2 are outside the problem."""
    if int(k) < 2:
        raise ValueError("capacity must be at least 2")
    return Summary(k)


def process(stream, k: int) -> Summary:
    """Fold the whole stream into a fresh summary of capacity k.

    u32 numpy arrays take the compiled path; any other iterable of ints is
    folded in pure Python. Both paths produce identical summaries.
    """
    if int(k) < 2:
        raise ValueError("capacity must be at least 2")
    k = int(k)
    if isinstance(stream, np.ndarray) and _kernels.HAVE_NUMBA:
        if stream.ndim != 1:
            raise ValueError("stream arrays must be one-dimensional")
        if stream.dtype != np.uint32:
            if not np.issubdtype(stream.dtype, np.integer):
                raise ValueError("stream arrays must hold integers")
            if stream.size and (
                int(stream.min()) < 0 or int(stream.max()) > U32_MAX
            ):
                raise ValueError("stream items outside the unsigned 32-bit range")
            stream = stream.astype(np.uint32)
        items, freqs, errs = _kernels.ingest_array(np.ascontiguousarray(stream), k)
        return Summary._from_arrays(k, items, freqs, errs)
    s = Summary(k)
    for x in stream:
        s.update(x)
    return s


def prune(s: Summary, n: int, k: Optional[int] = None) -> FrequentReport:
    """Report counters at or above the majority threshold floor(n/k)+1.

    Entries whose estimate minus error still clears the threshold cannot be
    false positives and are flagged guaranteed.
    """
    n = int(n)
    if n < 1:
        raise ValueError("stream length must be positive")
    k = s.k if k is None else int(k)
    if k < 2:
        raise ValueError("capacity must be at least 2")
    threshold = n // k + 1
    entries = tuple(
        ReportEntry(c.item, c.est_freq, c.err, c.est_freq - c.err >= threshold)
        for c in s.counters()
        if c.est_freq >= threshold
    )
    return FrequentReport(entries, threshold)
