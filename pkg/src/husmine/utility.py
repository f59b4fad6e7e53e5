"""Utility and remaining-utility computation: the numeric substrate of pruning.

All public reporting values are exact rationals.  The per-sequence matrices
hold profit-scaled integers (see ``ProfitTable.scale``) so that threshold
comparisons inside the miner never touch binary floating point; with integer
profits the scale is 1 and matrix cells equal the plain utilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .core import (
    Pattern,
    ProfitTable,
    QSequence,
    QSequenceDatabase,
    enumerate_embeddings,
    matches,
)


def item_utility(item: int, qty: int, profits: ProfitTable) -> Fraction:
    """Utility of one q-item: unit profit times quantity."""
    if qty < 1:
        raise ValueError(f"quantity must be >= 1, got {qty}")
    return profits[item] * qty


def sequence_utility(s: QSequence, profits: ProfitTable) -> Fraction:
    """Sum of all q-item utilities in the sequence."""
    total = Fraction(0)
    for _, item, qty in s.iter_qitems():
        total += profits[item] * qty
    return total


def embedding_utility(
    s: QSequence, t: Pattern, embedding: tuple[int, ...], profits: ProfitTable
) -> Fraction:
    """Utility of one embedding of ``t`` into ``s`` (tids as produced by
    ``enumerate_embeddings``)."""
    total = Fraction(0)
    for x, tid in zip(t.itemsets, embedding):
        itemset = s.itemsets[tid - 1]
        qty_of = {q.item: q.qty for q in itemset.items}
        for item in x:
            total += profits[item] * qty_of[item]
    return total


def scaled_occurrences(
    s: QSequence, profits: ProfitTable, keep: Iterable[int] | None = None
) -> list[tuple[int, int, int]]:
    """(tid, item, scaled utility) triples in position order, optionally
    restricted to the ``keep`` item set.  Position order is tid-major with
    items ascending inside an itemset — the order 'remaining utility' uses."""
    keep_set = None if keep is None else set(keep)
    out = []
    for tid, item, qty in s.iter_qitems():
        if keep_set is None or item in keep_set:
            out.append((tid, item, profits.scaled(item) * qty))
    return out


@dataclass(frozen=True)
class UtilityMatrices:
    """Dense per-sequence utility and remaining-utility matrices.

    Rows follow ``item_index`` (distinct items present, ascending); columns
    are tids 1..size of the sequence.  ``util[k, j]`` is the scaled utility of
    item k in itemset j+1 (0 where absent); ``rem_util[k, j]`` is the scaled
    sum of utilities of all q-items strictly after that occurrence, 0 where
    absent and 0 for the very last q-item.
    """

    item_index: tuple[int, ...]
    util: np.ndarray
    rem_util: np.ndarray
    scale: int

    def row_of(self, item: int) -> int:
        return self.item_index.index(item)


def build_matrices(
    s: QSequence, profits: ProfitTable, keep: Iterable[int] | None = None
) -> UtilityMatrices:
    """Build the utility / remaining-utility matrices for one sequence.

    ``keep`` restricts the computation to a surviving item subset (used after
    utilization-based item removal); dropped items contribute nothing to the
    remaining utilities.  Columns always span the original tid range.
    """
    occ = scaled_occurrences(s, profits, keep)
    items = tuple(sorted({item for _, item, _ in occ}))
    row = {item: k for k, item in enumerate(items)}
    util = np.zeros((len(items), s.size), dtype=np.int64)
    rem = np.zeros((len(items), s.size), dtype=np.int64)
    after = 0
    for tid, item, u in reversed(occ):
        util[row[item], tid - 1] = u
        rem[row[item], tid - 1] = after
        after += u
    return UtilityMatrices(items, util, rem, profits.scale)


def compute_swu_per_item(db: QSequenceDatabase) -> dict[int, Fraction]:
    """Sequence-weighted utilization of every item present: the sum of the
    full utilities of the sequences containing it."""
    swu: dict[int, Fraction] = {}
    for s in db.sequences:
        su = sequence_utility(s, db.profits)
        for item in {item for _, item, _ in s.iter_qitems()}:
            swu[item] = swu.get(item, Fraction(0)) + su
    return dict(sorted(swu.items()))


def swu_of_pattern(t: Pattern, db: QSequenceDatabase) -> Fraction:
    """Sum of full sequence utilities over the sequences containing ``t``.

    Anti-monotone: growing the pattern can only shrink the containing set,
    so this is a sound upper bound on the utility of ``t`` and every
    super-pattern.
    """
    total = Fraction(0)
    for s in db.sequences:
        if matches(s, t):
            total += sequence_utility(s, db.profits)
    return total


def max_embedding_utility(s: QSequence, t: Pattern, profits: ProfitTable) -> Fraction:
    """Best embedding utility of ``t`` in ``s``; 0 when ``t`` does not occur."""
    best = Fraction(0)
    for emb in enumerate_embeddings(s, t):
        u = embedding_utility(s, t, emb, profits)
        if u > best:
            best = u
    return best
