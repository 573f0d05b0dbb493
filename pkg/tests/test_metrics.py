"""Accuracy scoring and confidence intervals."""

from collections import Counter

import numpy as np
import pytest

from spacesaving import FrequentReport, ReportEntry
from spacesaving.metrics import (
    CiSummary,
    FrequencyTable,
    MetricsReport,
    confidence_interval,
    exact_frequencies,
    score,
    true_frequent,
)
from spacesaving.streamio import read_manifest, write_manifest


def report_of(*pairs):
    return FrequentReport(
        tuple(ReportEntry(item, est, 0, True) for item, est in pairs), threshold=0
    )


def test_exact_frequencies_hand_counts():
    empty = exact_frequencies([])
    assert empty.counts == {} and empty.total == 0
    table = exact_frequencies([1, 1, 2, 3])
    assert table.counts == {1: 2, 2: 1, 3: 1}
    assert table.total == 4


def test_exact_frequencies_matches_counter():
    stream = [3, 1, 3, 3, 2, 1]
    want = dict(Counter(stream))
    assert exact_frequencies(stream).counts == want
    assert exact_frequencies(np.asarray(stream, dtype=np.uint32)).counts == want


def test_frequency_table_checks_total():
    with pytest.raises(ValueError):
        FrequencyTable({1: 2}, total=3)
    assert FrequencyTable.from_counts({1: 2, 5: 1}).total == 3


def test_true_frequent_uses_strict_threshold():
    assert true_frequent(FrequencyTable.from_counts({1: 2, 2: 1, 3: 1}), k=2) == set()
    assert true_frequent(FrequencyTable.from_counts({1: 3, 2: 1}), k=2) == {1}
    allsingle = FrequencyTable.from_counts({i: 1 for i in range(1, 5)})
    assert true_frequent(allsingle, k=4) == set()
    with pytest.raises(ValueError):
        true_frequent(allsingle, k=1)


def test_score_single_overestimate():
    table = FrequencyTable.from_counts({10: 8, 11: 1})
    got = score(report_of((10, 10)), table, k=3)
    assert got == MetricsReport(
        total_error=2, precision=1.0, recall=1.0, are=0.25, reported=1, true_frequent=1
    )


def test_score_half_precision_half_recall():
    # truth is {1, 2}; report hits 1, misses 2, and adds noise item 9
    table = FrequencyTable.from_counts({1: 6, 2: 5, 9: 1})
    got = score(report_of((1, 6), (9, 1)), table, k=3)
    assert got.precision == 0.5
    assert got.recall == 0.5
    assert got.reported == 2
    assert got.true_frequent == 2


def test_score_unseen_item_counts_fully_wrong():
    table = FrequencyTable.from_counts({1: 10})
    got = score(report_of((1, 10), (2, 4)), table, k=2)
    assert got.total_error == 4
    assert got.are == pytest.approx(0.5)


def test_score_empty_report_conventions():
    nothing = FrequentReport((), threshold=0)
    relaxed = score(nothing, FrequencyTable.from_counts({1: 2, 2: 2}), k=2)
    assert (relaxed.precision, relaxed.recall, relaxed.are) == (1.0, 1.0, 0.0)
    missed = score(nothing, FrequencyTable.from_counts({1: 4}), k=2)
    assert missed.precision == 0.0
    assert missed.recall == 0.0


def test_manifest_round_trip_preserves_table(tmp_path):
    table = exact_frequencies([4, 4, 9, 1, 4])
    path = tmp_path / "m.csv"
    write_manifest(table.counts, path)
    assert FrequencyTable.from_counts(read_manifest(path)) == table


def test_confidence_interval_two_points():
    ci = confidence_interval([0.0, 2.0])
    assert ci.mean == pytest.approx(1.0)
    assert ci.half_width == pytest.approx(12.706, abs=2e-3)
    assert ci.runs == 2


def test_confidence_interval_twenty_points():
    values = [0.0, 2.0] * 10
    ci = confidence_interval(values)
    # s = sqrt(20/19), so half width = t(0.975, 19) / sqrt(19) = 2.093/4.3589
    assert ci.half_width == pytest.approx(0.48017, abs=1e-4)
    assert ci.runs == 20


def test_confidence_interval_needs_two_samples():
    with pytest.raises(ValueError):
        confidence_interval([5.0])
    with pytest.raises(ValueError):
        confidence_interval([])


def test_confidence_interval_constant_values():
    assert confidence_interval([3.0, 3.0, 3.0]) == CiSummary(3.0, 0.0, 3)
