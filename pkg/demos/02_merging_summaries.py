"""
Merging two summaries without losing guarantees
===============================================

Two summaries built over different parts of a stream can be fused into
one summary of the same size that still brackets every exact frequency
of the combined stream. The trick: when an item is missing from one
side, that side's minimum counter frequency stands in for it, both in
the estimate and in the error term.
"""

from collections import Counter

from spacesaving import agarwal_merge_step, agarwal_normalize, combine, merge_step, process

left = [1, 1, 1, 2, 2, 3, 4, 5, 5, 5, 5]
right = [1, 6, 6, 6, 2, 2, 2, 2, 7, 6]
k = 4

s1 = process(left, k)
s2 = process(right, k)
print(f"left summary:  {[(c.item, c.est_freq, c.err) for c in s1.counters()]}")
print(f"right summary: {[(c.item, c.est_freq, c.err) for c in s2.counters()]}")

# Step 1: combine. Shared items add their counters; one-sided items
# absorb the other side's minimum. Up to 2k entries can come out.
fused = combine(s1, s2)
print(f"combined ({fused.nz} entries):")
for e in fused.entries:
    print(f"  item {e.item}: est {e.est_freq}, err {e.err}")

# Step 2: cut back to k. The smallest entries go; how much mass they
# carried is recorded in the stats.
merged, stats = merge_step(s1, s2)
print(f"merge stats: minima {stats.m1}+{stats.m2}, overflow x={stats.x}, "
      f"discarded mass {stats.discarded_mass}")

# The output is a plain summary again, and the bracket still holds
# against the concatenated stream.
exact = Counter(left + right)
for c in merged.counters():
    assert c.est_freq - c.err <= exact[c.item] <= c.est_freq
print("merged bracket checks out:")
for c in merged.counters():
    print(f"  item {c.item}: {c.est_freq - c.err} <= true {exact[c.item]} <= {c.est_freq}")

# The baseline merge from the literature subtracts minima instead of
# adding them, so its counts become lower bounds and it keeps at most
# k-1 counters. Compare the two on the same input:
baseline = agarwal_merge_step(agarwal_normalize(s1), agarwal_normalize(s2))
print(f"baseline merge keeps {baseline.nz} counters (lower bounds):")
for c in baseline.counters():
    assert c.est_freq <= exact[c.item]
    print(f"  item {c.item}: est {c.est_freq} <= true {exact[c.item]}")
