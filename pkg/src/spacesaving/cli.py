"""Command-line front end: generate streams, run the pipeline, sweep presets.

Reports go to standard output and diagnostics to the error channel, so the
commands compose in shell pipelines. Exit codes: 0 on success, 2 on usage
or input errors, 1 on internal failures. Every command is deterministic
given its flags; rerunning an invocation reproduces its files byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from .distributions import DistSpec, sample_stream
from .experiments import (
    BASE_SEED,
    DEFAULT_SCALE,
    DEFAULT_SEEDS,
    PRESETS,
    RUNS_HEADER,
    run_experiment,
    write_aggregate_csv,
    write_runs_csv,
)
from .metrics import FrequencyTable, exact_frequencies, score
from .parallel import run_parallel
from .streamio import file_sha256, read_manifest, read_stream, write_manifest, write_stream

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacesaving",
        description="Mergeable frequent-item summaries: generate, run, evaluate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a power-law stream and its manifest")
    gen.add_argument("--family", choices=["zipf", "hurwitz"], default="zipf")
    gen.add_argument("--rho", type=float, required=True, help="power-law exponent")
    gen.add_argument("--a", type=float, default=0.5, help="head shift (hurwitz only)")
    gen.add_argument("--universe", type=int, default=1_000_000)
    gen.add_argument("--n", type=int, required=True, help="stream length")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True, help="output stream path (.u32)")
    gen.set_defaults(func=cmd_gen)

    run = sub.add_parser("run", help="mine frequent items from a stream file")
    run.add_argument("--input", required=True, help="stream file (.u32 or .txt)")
    run.add_argument("--k", type=int, required=True, help="counters per summary")
    run.add_argument("--p", type=int, default=1, help="logical workers")
    run.add_argument(
        "--strategy",
        choices=["paper", "agarwal", "sequential"],
        default="paper",
        help="sequential is the single-summary path (forces --p 1)",
    )
    run.add_argument("--oracle", help="manifest CSV with exact frequencies")
    run.add_argument(
        "--metrics-out",
        help="metrics CSV path (default: <input>.metrics.csv; needs --oracle)",
    )
    run.set_defaults(func=cmd_run)

    exp = sub.add_parser("experiment", help="run a preset accuracy sweep")
    exp.add_argument("preset", help=f"one of {sorted(PRESETS)}")
    exp.add_argument(
        "--scale",
        type=int,
        default=None,
        help="downscale factor (default: SS_DEFAULT_SCALE env or "
        f"{DEFAULT_SCALE}); n divides by it, k by its square root",
    )
    exp.add_argument("--seeds", type=int, default=DEFAULT_SEEDS)
    exp.add_argument("--base-seed", type=int, default=BASE_SEED)
    exp.add_argument("--p", type=int, default=8)
    exp.add_argument("--strategies", choices=["both", "paper", "agarwal"], default="both")
    exp.add_argument("--jobs", type=int, default=1, help="concurrent stream groups")
    exp.add_argument("--out-dir", default=".")
    exp.set_defaults(func=cmd_experiment)
    return parser


def cmd_gen(args) -> int:
    out = Path(args.out)
    if out.suffix != ".u32":
        raise ValueError(f"--out must end in .u32, got {out.name!r}")
    if args.n < 0:
        raise ValueError(f"need --n >= 0, got {args.n}")
    dist = DistSpec(args.family, rho=args.rho, a=args.a, universe=args.universe)
    stream = sample_stream(dist, args.n, seed=args.seed)
    manifest = out.with_suffix(".manifest.csv")
    write_stream(stream, out)
    write_manifest(exact_frequencies(stream).counts, manifest)
    print(f"stream: {out}")
    print(f"manifest: {manifest}")
    print(f"sha256: {file_sha256(out)}")
    return 0


def cmd_run(args) -> int:
    stream = read_stream(args.input)
    strategy, p = args.strategy, args.p
    if strategy == "sequential":
        strategy, p = "paper", 1

    table = None
    if args.oracle:
        table = FrequencyTable.from_counts(read_manifest(args.oracle))
        if table.total != len(stream):
            raise ValueError(
                f"oracle covers {table.total} items but the stream has {len(stream)}"
            )

    report = run_parallel(stream, p, args.k, strategy=strategy)
    print(
        f"n={len(stream)} k={args.k} p={p} strategy={strategy} "
        f"threshold={report.threshold} reported={len(report.entries)}",
        file=sys.stderr,
    )
    print("item\test_freq\terr\tguaranteed")
    for e in sorted(report.entries, key=lambda e: (-e.est_freq, e.item)):
        flag = "yes" if e.guaranteed else "no"
        print(f"{e.item}\t{e.est_freq}\t{e.err}\t{flag}")

    if table is not None:
        metrics_out = (
            Path(args.metrics_out)
            if args.metrics_out
            else Path(args.input).with_suffix(".metrics.csv")
        )
        m = score(report, table, args.k)
        run_id = f"{Path(args.input).stem}-{strategy}-k{args.k}-p{p}"
        with open(metrics_out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(RUNS_HEADER)
            writer.writerow(
                [run_id, strategy, p, len(stream), args.k, "", "",
                 m.total_error, m.precision, m.recall, m.are]
            )
        print(f"metrics: {metrics_out}", file=sys.stderr)
    return 0


def cmd_experiment(args) -> int:
    scale = args.scale
    if scale is None:
        scale = int(os.environ.get("SS_DEFAULT_SCALE", DEFAULT_SCALE))
    strategies = ("paper", "agarwal") if args.strategies == "both" else (args.strategies,)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    records, aggregates = run_experiment(
        args.preset,
        p=args.p,
        scale=scale,
        seeds=args.seeds,
        base_seed=args.base_seed,
        strategies=strategies,
        jobs=args.jobs,
        progress=lambda line: print(line, file=sys.stderr),
    )
    runs_path = out_dir / f"{args.preset}_runs.csv"
    agg_path = out_dir / f"{args.preset}_aggregate.csv"
    write_runs_csv(records, runs_path)
    write_aggregate_csv(aggregates, agg_path)
    print(f"runs: {runs_path}")
    print(f"aggregate: {agg_path}")
    failed = [a for a in aggregates if a.status != "ok"]
    if failed:
        print(f"{len(failed)} cell(s) marked failed in the aggregate", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # anything unexpected is an internal failure
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
