"""Reading and writing sequence databases, profit tables, and mined patterns.

File formats (UTF-8 text, '#' lines are comments in both input files):

* sequence file — one q-sequence per line; a q-item is ``ITEM:QTY`` (two
  positive base-10 integers), each itemset is terminated by ``-1``, the line
  by ``-2``.
* profit file — one ``ITEM PROFIT`` pair per line, PROFIT a non-negative
  decimal.
* pattern file — per line the itemsets (items space-separated, each itemset
  followed by ``-1``), then ``#UTIL: <utility> #SUP: <support>``.

Parsing is all-or-nothing: a silently truncated database would mine
wrong-but-plausible results, so every defect aborts with a line number.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable

from .core import (
    Pattern,
    ProfitTable,
    QItem,
    QItemset,
    QSequence,
    QSequenceDatabase,
    ValidationError,
)
from .miner import MinedPattern, canonical_order

STATS_HEADER = (
    "mode,min_util,min_sup,max_length,patterns,runtime_ms,peak_mem_bytes,"
    "candidates_generated,nodes_pruned_swu,nodes_pruned_peu,nodes_pruned_rsu,"
    "nodes_pruned_msp"
)


class DatasetFormatError(ValueError):
    """A defect in an input file, reported with its line number."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def format_exact(value: Fraction) -> str:
    """Exact decimal rendering of a rational with 10-smooth denominator."""
    if value.denominator == 1:
        return str(value.numerator)
    d = value.denominator
    digits = 0
    while d % 2 == 0:
        d //= 2
        digits += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(digits, fives)
    scaled = value * 10**digits
    text = str(scaled.numerator).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


def _data_lines(stream: IO[str]) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_qitem(token: str, lineno: int) -> QItem:
    item_text, sep, qty_text = token.partition(":")
    if not sep:
        raise DatasetFormatError(f"malformed q-item token {token!r}", lineno)
    try:
        item = int(item_text)
        qty = int(qty_text)
    except ValueError:
        raise DatasetFormatError(f"malformed q-item token {token!r}", lineno) from None
    if item < 1:
        raise DatasetFormatError(f"item id must be >= 1, got {item}", lineno)
    if qty < 1:
        raise DatasetFormatError(f"quantity must be >= 1, got {qty}", lineno)
    return QItem(item, qty)


def _parse_sequence_line(line: str, lineno: int, sid: int) -> QSequence:
    tokens = line.split()
    if tokens[-1] != "-2":
        raise DatasetFormatError("sequence line must end with the token -2", lineno)
    itemsets: list[QItemset] = []
    current: list[QItem] = []
    for token in tokens[:-1]:
        if token == "-2":
            raise DatasetFormatError("-2 before end of line", lineno)
        if token == "-1":
            if not current:
                raise DatasetFormatError("empty itemset", lineno)
            seen = [q.item for q in current]
            if len(set(seen)) != len(seen):
                raise DatasetFormatError("duplicate item in itemset", lineno)
            try:
                itemsets.append(QItemset(tuple(sorted(current, key=lambda q: q.item))))
            except ValidationError as exc:
                raise DatasetFormatError(str(exc), lineno) from None
            current = []
        else:
            current.append(_parse_qitem(token, lineno))
    if current:
        raise DatasetFormatError("itemset not terminated by -1", lineno)
    if not itemsets:
        raise DatasetFormatError("empty sequence", lineno)
    return QSequence(sid, tuple(itemsets))


def parse_profits(stream: IO[str]) -> ProfitTable:
    """Parse a profit file; duplicates and malformed rows abort."""
    profits: dict[int, Fraction] = {}
    for lineno, line in _data_lines(stream):
        parts = line.split()
        if len(parts) != 2:
            raise DatasetFormatError(f"expected 'ITEM PROFIT', got {line!r}", lineno)
        try:
            item = int(parts[0])
            profit = Fraction(Decimal(parts[1]))
        except (ValueError, InvalidOperation):
            raise DatasetFormatError(
                f"expected 'ITEM PROFIT', got {line!r}", lineno
            ) from None
        if item < 1:
            raise DatasetFormatError(f"item id must be >= 1, got {item}", lineno)
        if profit < 0:
            raise DatasetFormatError(f"profit must be >= 0, got {parts[1]}", lineno)
        if item in profits:
            raise DatasetFormatError(f"duplicate profit entry for item {item}", lineno)
        profits[item] = profit
    return ProfitTable(profits)


def parse_database(sequence_text: IO[str], profit_text: IO[str]) -> QSequenceDatabase:
    """Parse and validate a database; sids are assigned 1..n in file order."""
    profits = parse_profits(profit_text)
    sequences: list[QSequence] = []
    for lineno, line in _data_lines(sequence_text):
        seq = _parse_sequence_line(line, lineno, sid=len(sequences) + 1)
        for _, item, _ in seq.iter_qitems():
            if item not in profits:
                raise DatasetFormatError(
                    f"item {item} missing from profit table", lineno
                )
        sequences.append(seq)
    if not sequences:
        raise DatasetFormatError("no sequences")
    return QSequenceDatabase(tuple(sequences), profits)


def load_database(sequence_path: str | Path, profit_path: str | Path) -> QSequenceDatabase:
    with open(sequence_path, "r", encoding="utf-8") as seq_file:
        with open(profit_path, "r", encoding="utf-8") as prof_file:
            return parse_database(seq_file, prof_file)


def sequence_line(s: QSequence) -> str:
    tokens: list[str] = []
    for itemset in s.itemsets:
        tokens.extend(f"{q.item}:{q.qty}" for q in itemset.items)
        tokens.append("-1")
    tokens.append("-2")
    return " ".join(tokens)


def write_database(db: QSequenceDatabase, seq_sink: IO[str], prof_sink: IO[str]) -> None:
    """Canonical serialization; parsing it back reproduces ``db``."""
    for s in db.sequences:
        seq_sink.write(sequence_line(s) + "\n")
    for item, profit in sorted(db.profits.items()):
        prof_sink.write(f"{item} {format_exact(profit)}\n")


def pattern_line(rec: MinedPattern) -> str:
    tokens: list[str] = []
    for itemset in rec.pattern.itemsets:
        tokens.extend(str(item) for item in itemset)
        tokens.append("-1")
    tokens.append(f"#UTIL: {format_exact(rec.umax)} #SUP: {rec.support}")
    return " ".join(tokens)


def write_patterns(patterns: Iterable[MinedPattern], sink: IO[str]) -> None:
    """One line per pattern, descending utility then ascending pattern order."""
    for rec in canonical_order(patterns):
        sink.write(pattern_line(rec) + "\n")


@dataclass(frozen=True)
class GeneratorConfig:
    """Synthetic database shape: sizes are geometric with the given means,
    quantities uniform in [1, max_qty], profits uniform over cents in
    ``profit_range``.  Identical seeds give identical databases."""

    seed: int
    num_sequences: int
    num_items: int
    avg_itemsets_per_sequence: float = 4.0
    avg_items_per_itemset: float = 2.0
    max_qty: int = 5
    profit_range: tuple[Fraction | int | float | str, ...] = (1, 10)

    def __post_init__(self) -> None:
        if self.num_sequences < 1:
            raise ValueError("num_sequences must be >= 1")
        if self.num_items < 1:
            raise ValueError("num_items must be >= 1")
        if self.avg_itemsets_per_sequence <= 0 or self.avg_items_per_itemset <= 0:
            raise ValueError("average sizes must be positive")
        if self.max_qty < 1:
            raise ValueError("max_qty must be >= 1")
        lo, hi = self.profit_bounds
        if lo < 0 or hi < lo:
            raise ValueError(f"invalid profit range {self.profit_range}")

    @property
    def profit_bounds(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.profit_range
        return Fraction(lo), Fraction(hi)


def _geometric(rng: random.Random, mean: float) -> int:
    # support {1, 2, ...} with the requested mean (mean <= 1 collapses to 1)
    if mean <= 1.0:
        return 1
    p = 1.0 / mean
    n = 1
    while rng.random() >= p:
        n += 1
    return n


def generate_database(config: GeneratorConfig) -> QSequenceDatabase:
    """Deterministic synthetic database for benchmarks and fuzzing."""
    rng = random.Random(config.seed)
    lo, hi = config.profit_bounds
    lo_cents = int(lo * 100)
    hi_cents = int(hi * 100)
    profits = ProfitTable(
        {
            item: Fraction(rng.randint(lo_cents, hi_cents), 100)
            for item in range(1, config.num_items + 1)
        }
    )
    sequences = []
    for sid in range(1, config.num_sequences + 1):
        n_itemsets = _geometric(rng, config.avg_itemsets_per_sequence)
        itemsets = []
        for _ in range(n_itemsets):
            size = min(_geometric(rng, config.avg_items_per_itemset), config.num_items)
            members = sorted(rng.sample(range(1, config.num_items + 1), size))
            itemsets.append(
                QItemset(tuple(QItem(item, rng.randint(1, config.max_qty)) for item in members))
            )
        sequences.append(QSequence(sid, tuple(itemsets)))
    return QSequenceDatabase(tuple(sequences), profits)
