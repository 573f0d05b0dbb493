"""Two ways to merge bounded frequency summaries.

The primary path combines two summaries by summing shared counters and
charging each unshared counter with the other summary's minimum frequency
(in both the estimate and the error), then truncates back to the k largest.
All sequential guarantees survive this step with the error bound delta =
m1 + m2.

The baseline path first subtracts each full summary's minimum from all of
its counters (turning overestimates into underestimates), merges by plain
summation, and prunes to k-1 counters by subtracting the frequency at the
cut. It ships fewer guarantees: counts are lower bounds and the error terms
stop being meaningful, which is why its reports are never guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .summary import CounterEntry, Summary


@dataclass(frozen=True)
class CombinedSummary:
    """Pre-truncation fusion of two summaries; up to 2k counters."""

    k: int
    entries: tuple[CounterEntry, ...]

    @property
    def nz(self) -> int:
        return len(self.entries)

    def total_mass(self) -> int:
        return sum(e.est_freq for e in self.entries)


@dataclass(frozen=True)
class MergeStats:
    """Bookkeeping of one merge: minima, excess and what truncation dropped."""

    m1: int
    m2: int
    delta: int
    x: int
    discarded_mass: int


def _require_same_k(s1: Summary, s2: Summary, k: Optional[int]) -> int:
    if s1.k != s2.k:
        raise ValueError(f"cannot merge capacities {s1.k} and {s2.k}")
    if k is not None and int(k) != s1.k:
        raise ValueError(f"requested capacity {k} differs from summaries' {s1.k}")
    return s1.k


def combine(
    s1: Summary,
    s2: Summary,
    m1: Optional[int] = None,
    m2: Optional[int] = None,
) -> CombinedSummary:
    """Fuse two summaries without truncating.

    m1/m2 are the summaries' minimum frequencies (0 when not full); they
    default to the values computed from the inputs. Shared items sum both
    fields; items present on one side only absorb the other side's minimum
    into both frequency and error.
    """
    k = _require_same_k(s1, s2, None)
    m1 = s1.min_frequency() if m1 is None else int(m1)
    m2 = s2.min_frequency() if m2 is None else int(m2)
    right = {c.item: c for c in s2.counters()}
    fused: list[CounterEntry] = []
    for c in s1.counters():
        other = right.pop(c.item, None)
        if other is not None:
            fused.append(
                CounterEntry(c.item, c.est_freq + other.est_freq, c.err + other.err)
            )
        else:
            fused.append(CounterEntry(c.item, c.est_freq + m2, c.err + m2))
    for c in right.values():
        fused.append(CounterEntry(c.item, c.est_freq + m1, c.err + m1))
    fused.sort(key=lambda c: (c.est_freq, c.item))
    return CombinedSummary(k, tuple(fused))


def merge_step(
    s1: Summary, s2: Summary, k: Optional[int] = None
) -> tuple[Summary, MergeStats]:
    """Combine then keep the k highest-frequency counters.

    Returns the truncated summary plus stats: the two minima, their sum
    delta, the signed excess x = |combined| - k, and the frequency mass the
    truncation discarded (at least x*delta whenever x > 0).
    """
    k = _require_same_k(s1, s2, k)
    m1 = s1.min_frequency()
    m2 = s2.min_frequency()
    fused = combine(s1, s2, m1, m2)
    x = fused.nz - k
    if x > 0:
        dropped = fused.entries[:x]
        kept = fused.entries[x:]
        discarded = sum(e.est_freq for e in dropped)
    else:
        kept = fused.entries
        discarded = 0
    merged = Summary.from_counters(k, kept)
    return merged, MergeStats(m1, m2, m1 + m2, x, discarded)


def agarwal_normalize(s: Summary, k: Optional[int] = None) -> Summary:
    """Subtract a full summary's minimum from every counter, dropping zeros.

    Not-full summaries pass through unchanged. Error terms are left alone,
    so normalized counters can carry err > est_freq; downstream baseline
    steps never read the errors.
    """
    if k is not None and int(k) != s.k:
        raise ValueError(f"requested capacity {k} differs from the summary's {s.k}")
    if s.nz < s.k:
        return Summary.from_counters(s.k, s.counters())
    m = s.min_frequency()
    kept = [
        CounterEntry(c.item, c.est_freq - m, c.err)
        for c in s.counters()
        if c.est_freq > m
    ]
    return Summary.from_counters(s.k, kept)


def agarwal_merge_step(s1: Summary, s2: Summary, k: Optional[int] = None) -> Summary:
    """Baseline merge: sum shared counters, keep unshared ones unchanged,
    then prune to k-1 counters by subtracting the cut frequency.

    Expects normalized inputs (at most k-1 counters each). When the union
    exceeds k-1 counters, the frequency of the excess-th smallest counter is
    subtracted from the k-1 largest and everything at or below the cut is
    dropped.
    """
    k = _require_same_k(s1, s2, k)
    right = {c.item: c for c in s2.counters()}
    fused: list[CounterEntry] = []
    for c in s1.counters():
        other = right.pop(c.item, None)
        if other is not None:
            fused.append(
                CounterEntry(c.item, c.est_freq + other.est_freq, c.err + other.err)
            )
        else:
            fused.append(c)
    fused.extend(right.values())
    fused.sort(key=lambda c: (c.est_freq, c.item))
    if len(fused) > k - 1:
        excess = len(fused) - (k - 1)
        cut = fused[excess - 1].est_freq
        fused = [
            CounterEntry(c.item, c.est_freq - cut, c.err)
            for c in fused[excess:]
            if c.est_freq > cut
        ]
    return Summary.from_counters(k, fused)
