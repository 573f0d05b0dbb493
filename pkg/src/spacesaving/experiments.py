"""Accuracy sweeps over synthetic streams, with CSV output.

Three preset sweeps are defined at their original full-scale sizes. Runs
shrink them by a scale factor s: stream lengths divide by s and capacities
divide by sqrt(s), which keeps the capacity-to-length ratio regimes intact
while making the sweep fit a workstation. The factor lives in
``DEFAULT_SCALE`` and every entry point takes it as a parameter.

Each cell is repeated over consecutive seeds and aggregated with Student-t
confidence intervals. Streams are generated once per (length, shape, seed)
and shared by every capacity and strategy that uses them.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .distributions import DistSpec, sample_stream
from .metrics import CiSummary, MetricsReport, confidence_interval, exact_frequencies, score
from .parallel import run_parallel

__all__ = [
    "BASE_SEED",
    "DEFAULT_SCALE",
    "DEFAULT_SEEDS",
    "PRESETS",
    "CellAggregate",
    "ExperimentCell",
    "ExperimentPreset",
    "RunRecord",
    "run_experiment",
    "scaled_cells",
    "write_aggregate_csv",
    "write_runs_csv",
]

DEFAULT_SCALE = 100
DEFAULT_SEEDS = 20
BASE_SEED = 100
STRATEGIES = ("paper", "agarwal")


@dataclass(frozen=True)
class ExperimentCell:
    n: int
    k: int
    rho: float


@dataclass(frozen=True)
class ExperimentPreset:
    """A sweep shape: which (n, k, rho) cells to run, over which item universe."""

    name: str
    cells: tuple[ExperimentCell, ...]
    family: str = "zipf"
    a: float = 0.5
    universe: int = 1_000_000


PRESETS = {
    "exp1": ExperimentPreset(
        "exp1",
        tuple(ExperimentCell(500_000_000, k, 1.5) for k in range(1000, 10_001, 1000)),
    ),
    "exp2": ExperimentPreset(
        "exp2",
        tuple(
            ExperimentCell(n * 100_000_000, 2000, 1.5) for n in range(1, 11)
        ),
    ),
    "exp3": ExperimentPreset(
        "exp3",
        tuple(
            ExperimentCell(500_000_000, 2000, rho / 2) for rho in range(1, 7)
        ),
    ),
}


@dataclass(frozen=True)
class RunRecord:
    run_id: str
    strategy: str
    p: int
    n: int
    k: int
    rho: float
    a: float
    metrics: MetricsReport


@dataclass(frozen=True)
class CellAggregate:
    strategy: str
    p: int
    n: int
    k: int
    rho: float
    a: float
    runs: int
    total_error: CiSummary | None
    precision: CiSummary | None
    recall: CiSummary | None
    are: CiSummary | None
    status: str


def scaled_cells(preset: ExperimentPreset, scale: int) -> tuple[ExperimentCell, ...]:
    """Shrink a preset's grid: n by ``scale``, k by ``sqrt(scale)``."""
    if scale < 1:
        raise ValueError(f"need scale >= 1, got {scale}")
    root = math.isqrt(scale)
    cells = []
    for c in preset.cells:
        n, k = c.n // scale, c.k // root
        if n < 1 or k < 2:
            raise ValueError(
                f"scale {scale} collapses cell (n={c.n}, k={c.k}) below usable size"
            )
        cells.append(ExperimentCell(n, k, c.rho))
    return tuple(cells)


def run_experiment(
    preset: str,
    p: int = 8,
    scale: int = DEFAULT_SCALE,
    seeds: int = DEFAULT_SEEDS,
    base_seed: int = BASE_SEED,
    strategies: tuple[str, ...] = STRATEGIES,
    jobs: int = 1,
    progress=None,
) -> tuple[list[RunRecord], list[CellAggregate]]:
    """Run one preset sweep and return per-run records plus cell aggregates.

    A failure inside a cell stops that (cell, strategy) combination and marks
    its aggregate row; other cells keep running. ``jobs`` stream groups run
    concurrently; results do not depend on it. ``progress``, if given, is
    called with a line of text as each group finishes.
    """
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
    if seeds < 2:
        raise ValueError(f"need at least 2 seeds for intervals, got {seeds}")
    if jobs < 1:
        raise ValueError(f"need jobs >= 1, got {jobs}")
    spec0 = PRESETS[preset]
    cells = scaled_cells(spec0, scale)

    # share each generated stream across all capacities and strategies
    groups: dict[tuple[int, float], list[int]] = {}
    for idx, c in enumerate(cells):
        groups.setdefault((c.n, c.rho), []).append(idx)

    def run_group(item):
        (n, rho), idxs = item
        found: dict[tuple[int, str, int], RunRecord] = {}
        broken: dict[tuple[int, str], str] = {}
        dist = DistSpec(spec0.family, rho=rho, a=spec0.a, universe=spec0.universe)
        for s in range(seeds):
            seed = base_seed + s
            try:
                stream = sample_stream(dist, n, seed=seed)
                table = exact_frequencies(stream)
            except Exception as exc:
                for idx in idxs:
                    for strategy in strategies:
                        broken.setdefault((idx, strategy), str(exc))
                continue
            for idx in idxs:
                c = cells[idx]
                for strategy in strategies:
                    if (idx, strategy) in broken:
                        continue
                    try:
                        report = run_parallel(stream, p, c.k, strategy=strategy)
                    except Exception as exc:
                        broken[(idx, strategy)] = str(exc)
                        continue
                    run_id = f"{preset}-{strategy}-n{c.n}-k{c.k}-rho{c.rho}-seed{seed}"
                    found[(idx, strategy, s)] = RunRecord(
                        run_id, strategy, p, c.n, c.k, c.rho, spec0.a,
                        score(report, table, c.k),
                    )
        if progress is not None:
            progress(f"{preset}: finished group n={n} rho={rho} ({len(idxs)} cells)")
        return found, broken

    items = list(groups.items())
    if jobs == 1 or len(items) == 1:
        outputs = [run_group(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(run_group, items))

    results: dict[tuple[int, str, int], RunRecord] = {}
    failures: dict[tuple[int, str], str] = {}
    for found, broken in outputs:
        results.update(found)
        failures.update(broken)

    records = [
        results[(idx, strategy, s)]
        for idx in range(len(cells))
        for strategy in strategies
        for s in range(seeds)
        if (idx, strategy, s) in results
    ]
    aggregates = []
    for idx, c in enumerate(cells):
        for strategy in strategies:
            runs = [results[(idx, strategy, s)] for s in range(seeds) if (idx, strategy, s) in results]
            if (idx, strategy) in failures or len(runs) < 2:
                status = "error: " + failures.get((idx, strategy), "insufficient runs")
                stats = (None, None, None, None)
            else:
                status = "ok"
                stats = tuple(
                    confidence_interval([getattr(r.metrics, f) for r in runs])
                    for f in ("total_error", "precision", "recall", "are")
                )
            aggregates.append(
                CellAggregate(
                    strategy, p, c.n, c.k, c.rho, spec0.a, len(runs), *stats, status
                )
            )
    return records, aggregates


RUNS_HEADER = ["run_id", "strategy", "p", "n", "k", "rho", "a",
               "total_error", "precision", "recall", "are"]


def write_runs_csv(records: list[RunRecord], path) -> None:
    """One row per run: identity columns then the four accuracy numbers."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RUNS_HEADER)
        for r in records:
            m = r.metrics
            writer.writerow(
                [r.run_id, r.strategy, r.p, r.n, r.k, r.rho, r.a,
                 m.total_error, m.precision, m.recall, m.are]
            )


AGGREGATE_HEADER = ["strategy", "p", "n", "k", "rho", "a", "runs",
                    "total_error_mean", "total_error_ci_half_width",
                    "precision_mean", "precision_ci_half_width",
                    "recall_mean", "recall_ci_half_width",
                    "are_mean", "are_ci_half_width", "status"]


def write_aggregate_csv(aggregates: list[CellAggregate], path) -> None:
    """One row per (cell, strategy): means with confidence half widths."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(AGGREGATE_HEADER)
        for a in aggregates:
            row = [a.strategy, a.p, a.n, a.k, a.rho, a.a, a.runs]
            for ci in (a.total_error, a.precision, a.recall, a.are):
                row += [ci.mean, ci.half_width] if ci else ["nan", "nan"]
            row.append(a.status)
            writer.writerow(row)
