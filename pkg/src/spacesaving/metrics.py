"""Scoring reported frequent items against exact stream frequencies."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from .summary import FrequentReport

__all__ = [
    "CiSummary",
    "FrequencyTable",
    "MetricsReport",
    "confidence_interval",
    "exact_frequencies",
    "score",
    "true_frequent",
]


@dataclass(frozen=True)
class FrequencyTable:
    """Exact item frequencies of one stream, with the stream length."""

    counts: dict[int, int]
    total: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts must sum to the stream length")

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "FrequencyTable":
        counts = dict(counts)
        return cls(counts, sum(counts.values()))

    def get(self, item: int) -> int:
        return self.counts.get(item, 0)


@dataclass(frozen=True)
class MetricsReport:
    """Accuracy of one report: error mass, set accuracy, relative error, sizes."""

    total_error: int
    precision: float
    recall: float
    are: float
    reported: int
    true_frequent: int


@dataclass(frozen=True)
class CiSummary:
    mean: float
    half_width: float
    runs: int


def exact_frequencies(stream) -> FrequencyTable:
    """Count a stream exactly; the brute-force oracle behind every comparison."""
    if isinstance(stream, np.ndarray):
        if stream.size == 0:
            return FrequencyTable({}, 0)
        items, counts = np.unique(stream, return_counts=True)
        table = {int(i): int(c) for i, c in zip(items, counts)}
        return FrequencyTable(table, int(stream.size))
    counts = dict(Counter(stream))
    return FrequencyTable(counts, sum(counts.values()))


def true_frequent(table: FrequencyTable, k: int) -> set[int]:
    """Items whose exact frequency clears the threshold total // k + 1."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    threshold = table.total // k + 1
    return {item for item, f in table.counts.items() if f >= threshold}


def score(report: FrequentReport, table: FrequencyTable, k: int) -> MetricsReport:
    """Grade a report against exact frequencies.

    Precision and recall are over the true frequent set. An empty report
    scores precision 1 when nothing is truly frequent and 0 otherwise; recall
    is 1 when nothing is truly frequent. The average relative error runs over
    the reported items, and an item the stream never contained contributes 1.
    """
    truth = true_frequent(table, k)
    hits = sum(1 for e in report.entries if e.item in truth)
    reported = len(report.entries)
    if reported:
        precision = hits / reported
    else:
        precision = 1.0 if not truth else 0.0
    recall = hits / len(truth) if truth else 1.0

    total_error = 0
    rel = 0.0
    for e in report.entries:
        f = table.get(e.item)
        total_error += abs(e.est_freq - f)
        rel += abs(e.est_freq - f) / f if f > 0 else 1.0
    are = rel / reported if reported else 0.0
    return MetricsReport(total_error, precision, recall, are, reported, len(truth))


def confidence_interval(samples: Sequence[float], level: float = 0.95) -> CiSummary:
    """Mean and two-sided Student-t half width over repeated measurements."""
    m = len(samples)
    if m < 2:
        raise ValueError(f"need at least 2 samples, got {m}")
    mean = float(np.mean(samples))
    sd = float(np.std(samples, ddof=1))
    quantile = float(stats.t.ppf(0.5 + level / 2, df=m - 1))
    return CiSummary(mean, quantile * sd / m**0.5, m)
