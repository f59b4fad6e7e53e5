"""Command-line front end: mine, sweep, generate, oracle.

Exit codes: 0 success, 2 usage error, 3 file/parse error, 4 oracle limit
exceeded.  The stats CSV uses the header in ``dataset_io.STATS_HEADER``;
mining runtime excludes parsing and is wall-clock milliseconds.  Peak memory
is the process resident-set high water where the platform reports one
(0 plus a warning otherwise), so it is monotone across cells of a sweep.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dataset_io import (
    STATS_HEADER,
    DatasetFormatError,
    GeneratorConfig,
    format_exact,
    generate_database,
    load_database,
    write_database,
    write_patterns,
)
from .miner import Counters, MiningParams, mine
from .oracle import OracleLimitError, OracleLimits, oracle_mine

try:
    import resource
except ImportError:  # non-POSIX platform
    resource = None

_warned_no_memory = False


def peak_memory_bytes() -> int:
    global _warned_no_memory
    if resource is None:
        if not _warned_no_memory:
            print("warning: peak memory not available, recording 0", file=sys.stderr)
            _warned_no_memory = True
        return 0
    # ru_maxrss is KiB on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


@dataclass
class RunStats:
    """One row of the stats CSV."""

    mode: str
    min_util: str
    min_sup: str
    max_length: int | None
    patterns: int
    runtime_ms: int
    peak_mem_bytes: int
    counters: Counters

    def row(self) -> str:
        c = self.counters
        return ",".join(
            str(x)
            for x in (
                self.mode,
                self.min_util,
                self.min_sup,
                self.max_length if self.max_length is not None else "full",
                self.patterns,
                self.runtime_ms,
                self.peak_mem_bytes,
                c.candidates_generated,
                c.pruned_swu,
                c.pruned_peu,
                c.pruned_rsu,
                c.pruned_msp,
            )
        )


def parse_min_util(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid utility threshold {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("utility threshold must be >= 0")
    return value


def parse_min_sup(text: str):
    """'0.5' is a ratio of the database size, '3a' an absolute count."""
    if text.endswith("a"):
        try:
            count = int(text[:-1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid absolute support {text!r}")
        if count < 1:
            raise argparse.ArgumentTypeError("absolute support must be >= 1")
        return count
    try:
        ratio = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid support threshold {text!r}")
    if not 0 < ratio <= 1:
        raise argparse.ArgumentTypeError("support ratio must be in (0, 1]")
    return ratio


def _add_data_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--data", required=True, help="sequence file")
    sub.add_argument("--profits", required=True, help="profit table file")


def _add_mining_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--min-util", required=True, type=parse_min_util)
    sub.add_argument("--min-sup", default="1a", type=parse_min_sup,
                     help="ratio like 0.5 or absolute like 3a (default 1a)")
    sub.add_argument("--max-length", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="husmine",
        description="High-utility sequential pattern mining.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_mine = subparsers.add_parser("mine", help="mine one (mode, threshold) cell")
    _add_data_flags(p_mine)
    p_mine.add_argument("--mode", required=True, choices=("husp", "fhusp", "chusp"))
    _add_mining_flags(p_mine)
    p_mine.add_argument("--output", default=None, help="pattern file (default stdout)")
    p_mine.add_argument("--stats", default=None, help="one-row stats CSV")
    p_mine.add_argument("--disable", default="",
                        help="comma-separated pruning rules to disable (swu,peu,rsu,msp)")

    p_sweep = subparsers.add_parser("sweep", help="run a threshold sweep grid")
    _add_data_flags(p_sweep)
    p_sweep.add_argument("--modes", default="husp,fhusp,chusp",
                         help="comma-separated mode list")
    p_sweep.add_argument("--min-utils", required=True,
                         help="comma-separated thresholds, strictly descending")
    p_sweep.add_argument("--min-sup", default="1a", type=parse_min_sup)
    p_sweep.add_argument("--max-length", default=None,
                         help="INT for all modes, 'full', or per-mode like husp=3,chusp=full")
    p_sweep.add_argument("--out-dir", required=True)
    p_sweep.add_argument("--parallel", action="store_true",
                         help="run cells concurrently; timings become non-comparable "
                              "and the CSV gains a timing_comparable column")

    p_gen = subparsers.add_parser("generate", help="write a synthetic dataset")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--sequences", type=int, required=True)
    p_gen.add_argument("--items", type=int, required=True)
    p_gen.add_argument("--avg-itemsets", type=float, default=4.0)
    p_gen.add_argument("--avg-items", type=float, default=2.0)
    p_gen.add_argument("--max-qty", type=int, default=5)
    p_gen.add_argument("--profit-min", default="1")
    p_gen.add_argument("--profit-max", default="10")
    p_gen.add_argument("--out-data", required=True)
    p_gen.add_argument("--out-profits", required=True)

    p_oracle = subparsers.add_parser(
        "oracle", help="exhaustive definitional mining (small inputs only)"
    )
    _add_data_flags(p_oracle)
    p_oracle.add_argument("--mode", required=True, choices=("husp", "fhusp", "chusp"))
    _add_mining_flags(p_oracle)
    p_oracle.add_argument("--output", default=None)
    p_oracle.add_argument("--max-sequences", type=int, default=OracleLimits.max_sequences)
    p_oracle.add_argument("--max-items", type=int, default=OracleLimits.max_distinct_items)
    p_oracle.add_argument("--max-pattern-length", type=int,
                          default=OracleLimits.max_pattern_length)
    return parser


def _write_pattern_output(patterns, path: str | None) -> None:
    if path is None:
        write_patterns(patterns, sys.stdout)
    else:
        with open(path, "w", encoding="utf-8") as sink:
            write_patterns(patterns, sink)


def _min_sup_text(value) -> str:
    return f"{value}a" if isinstance(value, int) else format_exact(Fraction(value))


def cmd_mine(args) -> int:
    db = load_database(args.data, args.profits)
    disable = tuple(x for x in args.disable.split(",") if x)
    params = MiningParams(
        min_util=args.min_util,
        min_sup=args.min_sup,
        max_length=args.max_length,
        mode=args.mode,
    )
    start = time.perf_counter()
    patterns, counters = mine(db, params, disable=disable)
    runtime_ms = int((time.perf_counter() - start) * 1000)
    _write_pattern_output(patterns, args.output)
    if args.stats:
        stats = RunStats(
            mode=args.mode,
            min_util=format_exact(args.min_util),
            min_sup=_min_sup_text(args.min_sup),
            max_length=args.max_length,
            patterns=len(patterns),
            runtime_ms=runtime_ms,
            peak_mem_bytes=peak_memory_bytes(),
            counters=counters,
        )
        with open(args.stats, "w", encoding="utf-8") as sink:
            sink.write(STATS_HEADER + "\n")
            sink.write(stats.row() + "\n")
    return 0


def _parse_max_length_flag(text: str | None, modes: list[str]) -> dict[str, int | None]:
    if text is None or text == "full":
        return {mode: None for mode in modes}
    if "=" not in text:
        return {mode: int(text) for mode in modes}
    out: dict[str, int | None] = {mode: None for mode in modes}
    for part in text.split(","):
        mode, _, value = part.partition("=")
        if mode not in out:
            raise ValueError(f"unknown mode in --max-length: {mode!r}")
        out[mode] = None if value == "full" else int(value)
    return out


def cmd_sweep(args) -> int:
    db = load_database(args.data, args.profits)
    modes = [m for m in args.modes.split(",") if m]
    if not modes:
        raise ValueError("mode list must not be empty")
    util_texts = [t for t in args.min_utils.split(",") if t]
    min_utils = [parse_min_util(t) for t in util_texts]
    if not min_utils:
        raise ValueError("min_util list must not be empty")
    if any(a <= b for a, b in zip(min_utils, min_utils[1:])):
        raise ValueError("min_util list must be strictly descending")
    max_lengths = _parse_max_length_flag(args.max_length, modes)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    cells = [(mode, value) for mode in modes for value in min_utils]

    def run_cell(cell) -> RunStats:
        mode, min_util = cell
        params = MiningParams(
            min_util=min_util,
            min_sup=args.min_sup,
            max_length=max_lengths[mode],
            mode=mode,
        )
        start = time.perf_counter()
        patterns, counters = mine(db, params)
        runtime_ms = int((time.perf_counter() - start) * 1000)
        cell_name = f"{mode}_{format_exact(min_util)}.txt"
        with open(out_dir / cell_name, "w", encoding="utf-8") as sink:
            write_patterns(patterns, sink)
        return RunStats(
            mode=mode,
            min_util=format_exact(min_util),
            min_sup=_min_sup_text(args.min_sup),
            max_length=max_lengths[mode],
            patterns=len(patterns),
            runtime_ms=runtime_ms,
            peak_mem_bytes=peak_memory_bytes(),
            counters=counters,
        )

    if args.parallel:
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(cell) for cell in cells]

    # self-check: lowering the threshold can only grow the result set
    per_mode: dict[str, list[int]] = {}
    for stats in rows:
        per_mode.setdefault(stats.mode, []).append(stats.patterns)
    for mode, counts in per_mode.items():
        if any(a > b for a, b in zip(counts, counts[1:])):
            raise AssertionError(
                f"pattern count decreased while lowering min_util in mode {mode}"
            )

    with open(out_dir / "sweep.csv", "w", encoding="utf-8") as sink:
        if args.parallel:
            sink.write(STATS_HEADER + ",timing_comparable\n")
            for stats in rows:
                sink.write(stats.row() + ",0\n")
        else:
            sink.write(STATS_HEADER + "\n")
            for stats in rows:
                sink.write(stats.row() + "\n")
    return 0


def cmd_generate(args) -> int:
    config = GeneratorConfig(
        seed=args.seed,
        num_sequences=args.sequences,
        num_items=args.items,
        avg_itemsets_per_sequence=args.avg_itemsets,
        avg_items_per_itemset=args.avg_items,
        max_qty=args.max_qty,
        profit_range=(args.profit_min, args.profit_max),
    )
    db = generate_database(config)
    with open(args.out_data, "w", encoding="utf-8") as seq_sink:
        with open(args.out_profits, "w", encoding="utf-8") as prof_sink:
            write_database(db, seq_sink, prof_sink)
    return 0


def cmd_oracle(args) -> int:
    db = load_database(args.data, args.profits)
    params = MiningParams(
        min_util=args.min_util,
        min_sup=args.min_sup,
        max_length=args.max_length,
        mode=args.mode,
    )
    limits = OracleLimits(
        max_sequences=args.max_sequences,
        max_distinct_items=args.max_items,
        max_pattern_length=args.max_pattern_length,
    )
    patterns = oracle_mine(db, params, limits)
    _write_pattern_output(patterns, args.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "mine": cmd_mine,
        "sweep": cmd_sweep,
        "generate": cmd_generate,
        "oracle": cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as exc:
        kind = "profit table" if getattr(args, "profits", None) == exc.filename else "file"
        print(f"error: {kind} not found: {exc.filename}", file=sys.stderr)
        return 3
    except DatasetFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
