"""Mergeable heavy-hitter summaries with a parallel reduction driver.

The package provides the bounded-counter stream summary, two merge
strategies (error-carrying combine/truncate and the normalize/prune
baseline), a block-parallel driver, seeded power-law stream generators,
and an accuracy-evaluation harness with experiment presets.
"""

from .merging import (
    CombinedSummary,
    MergeStats,
    agarwal_merge_step,
    agarwal_normalize,
    combine,
    merge_step,
)
from .parallel import (
    BlockAssignment,
    ReductionPlan,
    RunTrace,
    block_bounds,
    reduce_tree,
    reduction_schedule,
    run_parallel,
    run_parallel_traced,
)
from .summary import (
    CounterEntry,
    FrequentReport,
    ReportEntry,
    Summary,
    new_summary,
    process,
    prune,
)

__all__ = [
    "BlockAssignment",
    "CombinedSummary",
    "CounterEntry",
    "FrequentReport",
    "MergeStats",
    "ReductionPlan",
    "ReportEntry",
    "RunTrace",
    "Summary",
    "agarwal_merge_step",
    "agarwal_normalize",
    "block_bounds",
    "combine",
    "merge_step",
    "new_summary",
    "process",
    "prune",
    "reduce_tree",
    "reduction_schedule",
    "run_parallel",
    "run_parallel_traced",
]

__version__ = "0.1.0"
