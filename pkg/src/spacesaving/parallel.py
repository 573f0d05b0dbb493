"""Parallel frequent-item mining over a block-partitioned stream.

The driver splits a stream into ``p`` contiguous blocks, builds one summary
per block, and folds the summaries together along a binary reduction tree
(pairs in round 1, pairs of pairs in round 2, and so on). Rank 0 ends up
holding the global summary and produces the report.

Workers exchange summaries in serialized form, so the ``threads`` mode and
the single-threaded ``simulate`` mode see byte-identical messages and give
byte-identical results.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .merging import agarwal_merge_step, agarwal_normalize, merge_step
from .summary import FrequentReport, ReportEntry, Summary, process, prune

__all__ = [
    "BlockAssignment",
    "ReductionPlan",
    "RunTrace",
    "block_bounds",
    "reduction_schedule",
    "reduce_tree",
    "run_parallel",
    "run_parallel_traced",
]

STRATEGIES = ("paper", "agarwal")
MODES = ("threads", "simulate")

StepFn = Callable[[Summary, Summary], Union[Summary, tuple]]


@dataclass(frozen=True)
class BlockAssignment:
    """Half-open-free description of one worker's slice: both ends inclusive."""

    rank: int
    left: int
    right: int

    def __len__(self) -> int:
        return self.right - self.left + 1


@dataclass(frozen=True)
class ReductionPlan:
    """Rounds of (receiver, sender) pairs; receivers keep folding, senders stop."""

    p: int
    rounds: tuple[tuple[tuple[int, int], ...], ...]


@dataclass(frozen=True)
class RunTrace:
    """Everything a parallel run produced, for inspection beyond the report."""

    report: FrequentReport
    summary: Summary
    counters_shipped: int
    plan: ReductionPlan


def block_bounds(rank: int, p: int, n: int) -> BlockAssignment:
    """Bounds of block ``rank`` when ``n`` items are split across ``p`` workers.

    Blocks are contiguous, cover [0, n) exactly, and differ in length by at
    most one. Requires 1 <= p <= n and 0 <= rank < p.
    """
    if p < 1 or p > n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    if rank < 0 or rank >= p:
        raise ValueError(f"rank {rank} out of range for p={p}")
    left = (rank * n) // p
    right = ((rank + 1) * n) // p - 1
    return BlockAssignment(rank, left, right)


def reduction_schedule(p: int) -> ReductionPlan:
    """Binary-tree reduction over ranks 0..p-1, result landing on rank 0.

    In round r (1-based), rank i receives from rank i + 2**(r-1) whenever
    i is a multiple of 2**r and the sender exists. Works for any p, not
    just powers of two.
    """
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    rounds = []
    stride = 1
    while stride < p:
        pairs = []
        for i in range(0, p, 2 * stride):
            if i + stride < p:
                pairs.append((i, i + stride))
        rounds.append(tuple(pairs))
        stride *= 2
    return ReductionPlan(p, tuple(rounds))


def _fold(step: StepFn, receiver: Summary, sender: Summary) -> Summary:
    out = step(receiver, sender)
    if isinstance(out, tuple):
        out = out[0]
    return out


def reduce_tree(summaries: Sequence[Summary], step: StepFn | None = None) -> Summary:
    """Fold summaries along the reduction schedule and return rank 0's result.

    ``step`` takes (receiver, sender) and returns the merged summary (a
    (summary, stats) tuple is unpacked). Defaults to the error-tracking merge.
    """
    if not summaries:
        raise ValueError("need at least one summary")
    if step is None:
        step = merge_step
    held = list(summaries)
    for rnd in reduction_schedule(len(held)).rounds:
        for recv, send in rnd:
            held[recv] = _fold(step, held[recv], held[send])
    return held[0]


def _check_run_args(n: int, p: int, k: int, strategy: str, mode: str) -> None:
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if p < 1 or p > n:
        raise ValueError(f"need 1 <= p <= stream length, got p={p}, n={n}")


def _local_summary(block, k: int, strategy: str) -> Summary:
    s = process(block, k)
    if strategy == "agarwal":
        s = agarwal_normalize(s)
    return s


def _final_report(root: Summary, n: int, k: int, strategy: str) -> FrequentReport:
    if strategy == "paper":
        return prune(root, n, k)
    entries = tuple(
        ReportEntry(c.item, c.est_freq, c.err, False) for c in root.counters()
    )
    return FrequentReport(entries, 0)


def _simulate(blocks, k: int, strategy: str, plan: ReductionPlan):
    step = merge_step if strategy == "paper" else agarwal_merge_step
    held = [_local_summary(b, k, strategy) for b in blocks]
    shipped = 0
    for rnd in plan.rounds:
        for recv, send in rnd:
            wire = held[send].to_bytes()
            shipped += held[send].nz
            held[recv] = _fold(step, held[recv], Summary.from_bytes(wire))
    return held[0], shipped


def _run_threads(blocks, k: int, strategy: str, plan: ReductionPlan):
    step = merge_step if strategy == "paper" else agarwal_merge_step
    p = plan.p
    inboxes = {
        (recv, r): queue.SimpleQueue()
        for r, rnd in enumerate(plan.rounds)
        for recv, _ in rnd
    }
    sent = [0] * p
    result: list[Summary | None] = [None]
    errors: list[BaseException] = []

    def work(rank: int) -> None:
        try:
            s = _local_summary(blocks[rank], k, strategy)
            for r, rnd in enumerate(plan.rounds):
                for recv, send in rnd:
                    if rank == send:
                        sent[rank] = s.nz
                        inboxes[(recv, r)].put(s.to_bytes())
                        return
                    if rank == recv:
                        other = Summary.from_bytes(inboxes[(recv, r)].get())
                        s = _fold(step, s, other)
            if rank == 0:
                result[0] = s
        except BaseException as exc:  # surfaced after join
            errors.append(exc)

    threads = [threading.Thread(target=work, args=(rank,)) for rank in range(p)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
    assert result[0] is not None
    return result[0], sum(sent)


def run_parallel_traced(
    stream,
    p: int,
    k: int,
    strategy: str = "paper",
    mode: str = "threads",
) -> RunTrace:
    """Run the parallel pipeline and keep the global summary and wire stats."""
    n = len(stream)
    _check_run_args(n, p, k, strategy, mode)
    if not isinstance(stream, np.ndarray):
        stream = list(stream)
    bounds = [block_bounds(rank, p, n) for rank in range(p)]
    blocks = [stream[b.left : b.right + 1] for b in bounds]
    plan = reduction_schedule(p)
    if mode == "simulate":
        root, shipped = _simulate(blocks, k, strategy, plan)
    else:
        root, shipped = _run_threads(blocks, k, strategy, plan)
    return RunTrace(_final_report(root, n, k, strategy), root, shipped, plan)


def run_parallel(
    stream,
    p: int,
    k: int,
    strategy: str = "paper",
    mode: str = "threads",
) -> FrequentReport:
    """Mine frequent items from ``stream`` with ``p`` workers and k counters each."""
    return run_parallel_traced(stream, p, k, strategy, mode).report
