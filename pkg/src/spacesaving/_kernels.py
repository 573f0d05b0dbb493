"""Compiled hot loop for bulk stream ingestion.

The per-item update over a u32 array is the only part of the package where
Python-level speed matters (experiment grids push billions of updates), so it
is JIT-compiled. State is a chained hash table from item to a stable counter
slot plus a binary min-heap ordered by (frequency, item); the heap root is the
eviction victim, which matches the smallest-item tie-break rule exactly.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - the dependency is declared
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap

_EMPTY = -1


@njit(cache=True, nogil=True)
def _ss_ingest(stream, k):  # pragma: no cover - exercised via process()
    tsize = 1
    while tsize < 4 * k:
        tsize *= 2
    mask = np.uint64(tsize - 1)
    mult = np.uint64(2654435761)

    head = np.full(tsize, _EMPTY, dtype=np.int64)
    nxt = np.full(k, _EMPTY, dtype=np.int64)
    item = np.zeros(k, dtype=np.uint32)
    freq = np.zeros(k, dtype=np.uint64)
    err = np.zeros(k, dtype=np.uint64)
    heap = np.zeros(k, dtype=np.int64)
    pos = np.zeros(k, dtype=np.int64)
    nz = 0
    one = np.uint64(1)

    for t in range(stream.shape[0]):
        x = stream[t]
        h = np.int64((np.uint64(x) * mult) & mask)
        cid = head[h]
        while cid != _EMPTY and item[cid] != x:
            cid = nxt[cid]

        if cid != _EMPTY:
            freq[cid] += one
            i = pos[cid]
        elif nz < k:
            cid = nz
            item[cid] = x
            freq[cid] = one
            err[cid] = np.uint64(0)
            nxt[cid] = head[h]
            head[h] = cid
            heap[nz] = cid
            pos[cid] = nz
            i = nz
            nz += 1
            # sift up: a fresh frequency-1 counter belongs near the root
            while i > 0:
                par = (i - 1) // 2
                a = heap[i]
                b = heap[par]
                if freq[a] < freq[b] or (freq[a] == freq[b] and item[a] < item[b]):
                    heap[i] = b
                    heap[par] = a
                    pos[b] = i
                    pos[a] = par
                    i = par
                else:
                    break
            continue
        else:
            cid = heap[0]
            old = item[cid]
            oh = np.int64((np.uint64(old) * mult) & mask)
            c = head[oh]
            if c == cid:
                head[oh] = nxt[cid]
            else:
                while nxt[c] != cid:
                    c = nxt[c]
                nxt[c] = nxt[cid]
            nxt[cid] = head[h]
            head[h] = cid
            err[cid] = freq[cid]
            freq[cid] += one
            item[cid] = x
            i = 0

        # sift down: the counter at heap index i just grew
        while True:
            left = 2 * i + 1
            right = left + 1
            small = i
            if left < nz:
                a = heap[left]
                b = heap[small]
                if freq[a] < freq[b] or (freq[a] == freq[b] and item[a] < item[b]):
                    small = left
            if right < nz:
                a = heap[right]
                b = heap[small]
                if freq[a] < freq[b] or (freq[a] == freq[b] and item[a] < item[b]):
                    small = right
            if small == i:
                break
            a = heap[i]
            b = heap[small]
            heap[i] = b
            heap[small] = a
            pos[b] = i
            pos[a] = small
            i = small

    return item[:nz].copy(), freq[:nz].copy(), err[:nz].copy()


def ingest_array(stream: np.ndarray, k: int):
    """Run the compiled update loop; returns (items, freqs, errs) unsorted."""
    return _ss_ingest(stream, k)
