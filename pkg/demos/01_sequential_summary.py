"""
Counting frequent items in one pass
===================================

A summary keeps k counters for an unbounded stream. Every estimate it
produces comes with an error term, and together they bracket the exact
frequency: est_freq - err <= true count <= est_freq.
"""

from collections import Counter

from spacesaving import new_summary, process, prune

# A little stream where 7 and 3 dominate.
stream = [7, 3, 7, 1, 7, 3, 2, 7, 3, 7, 9, 7, 3, 7, 4, 7]

# Feed it item by item into a summary with room for only 4 counters.
summary = new_summary(4)
for x in stream:
    summary.update(x)

print(f"stream of {len(stream)} items, {len(set(stream))} distinct, k=4")
print("counters (ascending by estimate):")
for c in summary.counters():
    print(f"  item {c.item}: est {c.est_freq}, err {c.err}")

# The bracket holds for every monitored item.
exact = Counter(stream)
for c in summary.counters():
    low, high = c.est_freq - c.err, c.est_freq
    assert low <= exact[c.item] <= high
    print(f"  item {c.item}: {low} <= true {exact[c.item]} <= {high}")

# The one-shot form does the same thing (and uses a fast path for arrays).
assert process(stream, 4) == summary

# Reporting: keep the counters that clear the frequency threshold
# floor(n/k) + 1. Entries whose lower bound clears it too are marked
# guaranteed; they are certainly frequent, no oracle needed.
report = prune(summary, len(stream), 4)
print(f"threshold {report.threshold}:")
for e in report.entries:
    tag = "guaranteed" if e.guaranteed else "possible"
    print(f"  item {e.item} reported with est {e.est_freq} ({tag})")

# Summaries serialize to a compact little-endian wire format.
blob = summary.to_bytes()
print(f"wire format: {len(blob)} bytes for {summary.nz} counters")
