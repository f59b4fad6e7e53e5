"""Brute-force reference miner, straight from the definitions.

Pattern utility is the per-sequence maximum over *all* embeddings (found by
exhaustive enumeration), support is a direct containment count, and the
closed set comes from pairwise containment among equal-support results.  No
upper bounds, no projection — exponentially slow and therefore guarded by
hard input limits.  This module is the ground truth the fast miner is tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Pattern, QSequenceDatabase, matches, pattern_contains
from .miner import MinedPattern, MiningParams, canonical_order, resolve_min_sup
from .utility import max_embedding_utility


class OracleLimitError(RuntimeError):
    """The input exceeds the oracle's exhaustive-enumeration limits."""


@dataclass(frozen=True)
class OracleLimits:
    """Hard caps guarding the exponential enumeration."""

    max_sequences: int = 8
    max_distinct_items: int = 6
    max_pattern_length: int = 8

    def check(self, db: QSequenceDatabase) -> None:
        if len(db.sequences) > self.max_sequences:
            raise OracleLimitError(
                f"{len(db.sequences)} sequences exceed the oracle limit "
                f"of {self.max_sequences}"
            )
        n_items = len(db.items_present())
        if n_items > self.max_distinct_items:
            raise OracleLimitError(
                f"{n_items} distinct items exceed the oracle limit "
                f"of {self.max_distinct_items}"
            )


def oracle_umax(t: Pattern, db: QSequenceDatabase) -> Fraction:
    """Pattern utility by embedding enumeration: per sequence the best
    embedding utility, summed over all sequences (0 where absent)."""
    total = Fraction(0)
    for s in db.sequences:
        total += max_embedding_utility(s, t, db.profits)
    return total


def oracle_support(t: Pattern, db: QSequenceDatabase) -> int:
    """Number of sequences containing ``t``."""
    return sum(1 for s in db.sequences if matches(s, t))


def _enumerate_occurring(
    db: QSequenceDatabase, max_length: int
) -> dict[tuple, MinedPattern]:
    """Every pattern occurring in the database up to ``max_length`` items.

    Breadth-first growth with the miner's two moves (in-itemset item, new
    singleton itemset) but no pruning beyond dropping absent patterns, which
    is exact: nothing containing an absent pattern can occur.
    """
    items = db.items_present()
    found: dict[tuple, MinedPattern] = {}
    frontier: list[Pattern] = []
    for item in items:
        t = Pattern.of((item,))
        supp = oracle_support(t, db)
        if supp:
            found[t.key()] = MinedPattern(t, oracle_umax(t, db), supp)
            frontier.append(t)
    while frontier:
        next_frontier: list[Pattern] = []
        for t in frontier:
            if t.length >= max_length:
                continue
            children = [
                Pattern(t.itemsets[:-1] + (t.itemsets[-1] + (item,),))
                for item in items
                if item > t.last_item
            ]
            children += [Pattern(t.itemsets + ((item,),)) for item in items]
            for child in children:
                supp = oracle_support(child, db)
                if supp:
                    found[child.key()] = MinedPattern(
                        child, oracle_umax(child, db), supp
                    )
                    next_frontier.append(child)
        frontier = next_frontier
    return found


def oracle_mine(
    db: QSequenceDatabase,
    params: MiningParams,
    limits: OracleLimits = OracleLimits(),
) -> list[MinedPattern]:
    """Definitional mining result for any mode, within the limits."""
    limits.check(db)
    max_length = limits.max_pattern_length
    if params.max_length is not None:
        max_length = min(max_length, params.max_length)
    min_util = params.min_util_value

    occurring = _enumerate_occurring(db, max_length)
    husps = [rec for rec in occurring.values() if rec.umax >= min_util]
    if params.mode == "husp":
        return canonical_order(husps)

    min_sup_abs = resolve_min_sup(params.min_sup, len(db.sequences))
    fhusps = [rec for rec in husps if rec.support >= min_sup_abs]
    if params.mode == "fhusp":
        return canonical_order(fhusps)

    closed = [
        rec
        for rec in fhusps
        if not any(
            other.support == rec.support
            and other.pattern.length > rec.pattern.length
            and pattern_contains(other.pattern, rec.pattern)
            for other in fhusps
        )
    ]
    return canonical_order(closed)
