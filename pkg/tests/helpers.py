"""Shared test utilities: the retail example database and pattern shorthand."""

from __future__ import annotations

import random
from fractions import Fraction

from husmine import (
    MinedPattern,
    Pattern,
    ProfitTable,
    QItem,
    QItemset,
    QSequence,
    QSequenceDatabase,
)

# letter symbols for the retail example
SYMBOLS = {letter: i + 1 for i, letter in enumerate("abcdefg")}
LETTERS = {v: k for k, v in SYMBOLS.items()}


def pat(text: str) -> Pattern:
    """Shorthand: 'cg|be' -> <(c g)(b e)> with the retail symbol table."""
    return Pattern.of(*(sorted(SYMBOLS[ch] for ch in group) for group in text.split("|")))


def show(p: Pattern) -> str:
    return "|".join("".join(LETTERS[i] for i in x) for x in p.itemsets)


def qseq(sid: int, *itemsets) -> QSequence:
    return QSequence(
        sid, tuple(QItemset(tuple(QItem(i, q) for i, q in x)) for x in itemsets)
    )


RETAIL_PROFITS = {1: 2, 2: 5, 3: 3, 4: 4, 5: 6, 6: 1, 7: 7}


def retail_database() -> QSequenceDatabase:
    """The worked retail example: 5 sequences over items a..g."""
    profits = ProfitTable(RETAIL_PROFITS)
    return QSequenceDatabase(
        (
            qseq(1, [(1, 5), (3, 2), (7, 5)], [(1, 3), (2, 1), (3, 3), (6, 2)],
                 [(2, 3), (4, 2), (5, 2)]),
            qseq(2, [(3, 2), (5, 1)], [(1, 2), (2, 2), (6, 5)],
                 [(2, 2), (3, 1), (5, 4), (7, 6)]),
            qseq(3, [(1, 1), (2, 1), (5, 3)], [(3, 3), (4, 2), (7, 3)],
                 [(2, 2), (5, 1)], [(4, 3)]),
            qseq(4, [(2, 1), (3, 1), (5, 2), (7, 5)], [(1, 3), (2, 2), (5, 4), (6, 2)],
                 [(2, 2), (3, 1), (5, 2)]),
            qseq(5, [(1, 4), (4, 2), (6, 2), (7, 10)]),
        ),
        profits,
    )


def result_set(records) -> set[tuple]:
    """(pattern key, umax, support) triples for set comparison."""
    return {(r.pattern.itemsets, r.umax, r.support) for r in records}


def expected(text: str, umax, support: int) -> MinedPattern:
    return MinedPattern(pat(text), Fraction(umax), support)


def random_small_database(rng: random.Random, *, integral_profits: bool = True) -> QSequenceDatabase:
    """A database inside the oracle limits: <= 8 sequences, <= 6 items,
    itemsets of <= 3 items, <= 8 q-items per sequence."""
    n_items = rng.randint(3, 6)
    if integral_profits:
        profits = ProfitTable({i: rng.randint(1, 9) for i in range(1, n_items + 1)})
    else:
        profits = ProfitTable(
            {i: Fraction(rng.randint(1, 900), 100) for i in range(1, n_items + 1)}
        )
    sequences = []
    for sid in range(1, rng.randint(3, 8) + 1):
        budget = rng.randint(2, 8)
        itemsets = []
        while budget > 0:
            size = rng.randint(1, min(3, n_items, budget))
            members = sorted(rng.sample(range(1, n_items + 1), size))
            itemsets.append(
                QItemset(tuple(QItem(i, rng.randint(1, 4)) for i in members))
            )
            budget -= size
            if rng.random() < 0.25:
                break
        sequences.append(QSequence(sid, tuple(itemsets)))
    return QSequenceDatabase(tuple(sequences), profits)


def random_params_for(db: QSequenceDatabase, rng: random.Random, mode: str):
    """Thresholds that make mining non-trivial on ``db``."""
    from husmine import MiningParams, oracle_umax

    best_single = max(
        (oracle_umax(Pattern.of((i,)), db) for i in db.items_present()),
        default=Fraction(0),
    )
    min_util = Fraction(rng.randint(20, 120), 100) * best_single
    min_sup = rng.choice([1, 2, Fraction(1, 2), Fraction(3, 10)])
    max_length = rng.choice([None, None, None, 3])
    return MiningParams(
        min_util=min_util, min_sup=min_sup, max_length=max_length, mode=mode
    )
