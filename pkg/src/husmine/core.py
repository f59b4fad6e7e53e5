"""Quantitative sequences, quantity-free patterns, and the containment predicates.

A q-sequence is an ordered list of itemsets whose members carry purchase
quantities; a pattern is the same shape with the quantities stripped.  Items
are positive integers and their numeric order is the canonical item order,
both inside an itemset and for extension enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Mapping

ItemId = int


class ValidationError(ValueError):
    """A domain object violates one of its structural invariants."""


@dataclass(frozen=True, slots=True)
class QItem:
    """One purchased item: (item id, units bought)."""

    item: int
    qty: int

    def __post_init__(self) -> None:
        if self.item < 1:
            raise ValidationError(f"item id must be >= 1, got {self.item}")
        if self.qty < 1:
            raise ValidationError(f"quantity must be >= 1, got {self.qty}")


@dataclass(frozen=True, slots=True)
class QItemset:
    """A non-empty transaction; members strictly ascending by item id."""

    items: tuple[QItem, ...]

    def __post_init__(self) -> None:
        if not self.items:
            raise ValidationError("itemset must not be empty")
        for a, b in zip(self.items, self.items[1:]):
            if a.item >= b.item:
                raise ValidationError(
                    f"itemset not strictly ascending: {a.item} before {b.item}"
                )

    @property
    def item_ids(self) -> tuple[int, ...]:
        return tuple(q.item for q in self.items)


@dataclass(frozen=True, slots=True)
class QSequence:
    """One customer history: a non-empty ordered list of itemsets.

    The 1-based position of an itemset is its transaction id (tid).
    """

    sid: int
    itemsets: tuple[QItemset, ...]

    def __post_init__(self) -> None:
        if self.sid < 1:
            raise ValidationError(f"sid must be >= 1, got {self.sid}")
        if not self.itemsets:
            raise ValidationError(f"sequence {self.sid} has no itemsets")

    @property
    def size(self) -> int:
        """Number of itemsets."""
        return len(self.itemsets)

    @property
    def length(self) -> int:
        """Total number of q-items."""
        return sum(len(x.items) for x in self.itemsets)

    def iter_qitems(self) -> Iterator[tuple[int, int, int]]:
        """Yield (tid, item, qty) in position order: tid-major, item ascending."""
        for tid, itemset in enumerate(self.itemsets, start=1):
            for q in itemset.items:
                yield tid, q.item, q.qty


class ProfitTable:
    """Per-unit profit for every item a database may contain.

    Profits are exact rationals (decimal inputs parse exactly).  ``scale`` is
    the least common multiple of the profit denominators: multiplying every
    profit by it yields integers, which is how the mining kernels keep all
    utility arithmetic exact.
    """

    __slots__ = ("_profits", "scale")

    def __init__(self, profits: Mapping[int, Fraction | int | str]) -> None:
        converted: dict[int, Fraction] = {}
        for item, value in profits.items():
            p = Fraction(value)
            if item < 1:
                raise ValidationError(f"item id must be >= 1, got {item}")
            if p < 0:
                raise ValidationError(f"profit of item {item} is negative: {p}")
            converted[item] = p
        self._profits = converted
        self.scale = lcm(*(p.denominator for p in converted.values())) if converted else 1

    def __getitem__(self, item: int) -> Fraction:
        try:
            return self._profits[item]
        except KeyError:
            raise KeyError(f"item {item} has no profit entry") from None

    def __contains__(self, item: int) -> bool:
        return item in self._profits

    def __len__(self) -> int:
        return len(self._profits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProfitTable):
            return NotImplemented
        return self._profits == other._profits

    def items(self):
        return self._profits.items()

    def scaled(self, item: int) -> int:
        """Profit of ``item`` times ``scale`` — always an integer."""
        p = self[item] * self.scale
        return p.numerator  # denominator is 1 by construction


@dataclass(frozen=True)
class QSequenceDatabase:
    """A list of q-sequences plus the shared profit table."""

    sequences: tuple[QSequence, ...]
    profits: ProfitTable

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for s in self.sequences:
            if s.sid in seen:
                raise ValidationError(f"duplicate sid {s.sid}")
            seen.add(s.sid)
            for _, item, _ in s.iter_qitems():
                if item not in self.profits:
                    raise ValidationError(
                        f"item {item} in sequence {s.sid} has no profit entry"
                    )

    def __len__(self) -> int:
        return len(self.sequences)

    def items_present(self) -> tuple[int, ...]:
        """Distinct items occurring anywhere in the database, ascending."""
        items = {item for s in self.sequences for _, item, _ in s.iter_qitems()}
        return tuple(sorted(items))


@dataclass(frozen=True, slots=True)
class Pattern:
    """A quantity-free sequence of itemsets — the object being mined."""

    itemsets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.itemsets:
            raise ValidationError("pattern must have at least one itemset")
        for x in self.itemsets:
            if not x:
                raise ValidationError("pattern itemset must not be empty")
            for a, b in zip(x, x[1:]):
                if a >= b:
                    raise ValidationError(
                        f"pattern itemset not strictly ascending: {a} before {b}"
                    )
            if x[0] < 1:
                raise ValidationError(f"item id must be >= 1, got {x[0]}")

    @classmethod
    def of(cls, *itemsets) -> "Pattern":
        return cls(tuple(tuple(x) for x in itemsets))

    @property
    def length(self) -> int:
        """Total item count."""
        return sum(len(x) for x in self.itemsets)

    @property
    def size(self) -> int:
        """Itemset count."""
        return len(self.itemsets)

    @property
    def last_item(self) -> int:
        return self.itemsets[-1][-1]

    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.itemsets


def pattern_contains(sup: Pattern, sub: Pattern) -> bool:
    """True iff ``sub`` embeds into ``sup``: strictly increasing itemset indices
    with each sub-itemset a subset of the matched sup-itemset.

    Reflexive; proper containment is ``pattern_contains(sup, sub) and sup != sub``.
    Greedy left-to-right matching is exact here because any embedding can be
    shifted left.
    """
    sup_sets = [frozenset(x) for x in sup.itemsets]
    j = 0
    for x in sub.itemsets:
        need = frozenset(x)
        while j < len(sup_sets) and not need <= sup_sets[j]:
            j += 1
        if j == len(sup_sets):
            return False
        j += 1
    return True


def matches(s: QSequence, t: Pattern) -> bool:
    """True iff some q-subsequence of ``s``, quantities stripped, equals ``t``."""
    j = 0
    n = s.size
    for x in t.itemsets:
        need = frozenset(x)
        while j < n and not need <= frozenset(s.itemsets[j].item_ids):
            j += 1
        if j == n:
            return False
        j += 1
    return True


def enumerate_embeddings(s: QSequence, t: Pattern) -> list[tuple[int, ...]]:
    """All embeddings of ``t`` into ``s``, each as the tuple of matched tids.

    Items inside an itemset are unique, so the tid choice per pattern itemset
    pins down the exact q-items.  Order is lexicographic by tid tuple.
    """
    needed = [frozenset(x) for x in t.itemsets]
    candidate_tids: list[list[int]] = []
    for need in needed:
        tids = [
            tid
            for tid, itemset in enumerate(s.itemsets, start=1)
            if need <= frozenset(itemset.item_ids)
        ]
        if not tids:
            return []
        candidate_tids.append(tids)

    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def extend(depth: int, min_tid: int) -> None:
        if depth == len(needed):
            out.append(tuple(chosen))
            return
        for tid in candidate_tids[depth]:
            if tid >= min_tid:
                chosen.append(tid)
                extend(depth + 1, tid + 1)
                chosen.pop()

    extend(0, 1)
    return out
