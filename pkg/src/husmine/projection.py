"""Projected-database structures: per-pattern utility chains and their growth.

Every mined pattern is represented by a ``Chus`` node: the ids of the
sequences containing it plus, per sequence, the chain of its ending
occurrences with accumulated best utilities.  Nodes are grown by two moves —
adding an item inside the last itemset, or appending a new singleton itemset —
without ever copying the database: growth reads the parent chain and the
per-sequence occurrence index only.

The occurrence index is flattened into int64 arrays once per mining run so
the growth loops can run in a compiled kernel; see ``husmine._kernels``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .core import Pattern, QSequenceDatabase
from .utility import scaled_occurrences

# growth kinds shared with the kernel backends
_SAME_ITEMSET = 0
_LATER_ITEMSET = 1


@dataclass(frozen=True, slots=True)
class UlsElement:
    """One ending occurrence of a pattern in one sequence.

    ``tid`` is the itemset holding the ending q-item, ``acu`` the best
    utility among embeddings ending exactly there (profit-scaled), ``link``
    the list index of the next element or None.
    """

    tid: int
    acu: int
    link: int | None


@dataclass(frozen=True, slots=True)
class Ucs:
    """The utility chain of a pattern in one sequence."""

    sid: int
    peu_in_seq: int
    uls: tuple[UlsElement, ...]


class ProjectionContext:
    """Flattened occurrence index for one (optionally item-filtered) database.

    Layout, all int64:

    * ``it_off``/``it_ids``: per sequence, its distinct surviving items
      (ascending); row r of the index is one (sequence, item) pair.
    * ``row_off`` -> ``occ_tid``/``occ_util``/``occ_rem``: per row, the item's
      occurrences in tid order with scaled utility and remaining utility.
    * ``cs_off`` -> ``col_off`` -> ``col_rows``: per itemset (original tid
      positions are preserved even when filtering empties an itemset), the
      global rows present, ascending by item.
    """

    def __init__(
        self,
        db: QSequenceDatabase,
        keep: Iterable[int] | None = None,
        kernels=None,
    ) -> None:
        self.kernels = kernels if kernels is not None else _kernels.active
        self.scale = db.profits.scale
        self.n_sequences = len(db.sequences)
        self.sids = np.fromiter(
            (s.sid for s in db.sequences), dtype=np.int64, count=len(db.sequences)
        )

        keep_set = None if keep is None else set(keep)
        per_seq = [scaled_occurrences(s, db.profits, keep_set) for s in db.sequences]

        present = sorted({item for occ in per_seq for _, item, _ in occ})
        self.items: tuple[int, ...] = tuple(present)
        self._gidx = {item: g for g, item in enumerate(present)}
        n_g = len(present)

        it_off = [0]
        it_ids: list[int] = []
        it_gidx: list[int] = []
        row_off = [0]
        occ_tid: list[int] = []
        occ_util: list[int] = []
        occ_rem: list[int] = []
        cs_off = [0]
        col_buckets: list[list[int]] = []
        occ_total = [0] * n_g
        self.max_seq_length = 0

        for s, occ in zip(db.sequences, per_seq):
            self.max_seq_length = max(self.max_seq_length, len(occ))
            # remaining utility: total of everything strictly after, position order
            rem_at: dict[int, int] = {}
            after = 0
            for pos in range(len(occ) - 1, -1, -1):
                rem_at[pos] = after
                after += occ[pos][2]
            by_item: dict[int, list[tuple[int, int, int]]] = {}
            for pos, (tid, item, u) in enumerate(occ):
                by_item.setdefault(item, []).append((tid, u, rem_at[pos]))
            base_col = len(col_buckets)
            col_buckets.extend([] for _ in range(s.size))
            for item in sorted(by_item):
                grow = len(it_ids)
                it_ids.append(item)
                it_gidx.append(self._gidx[item])
                occ_total[self._gidx[item]] += len(by_item[item])
                for tid, u, rem in by_item[item]:
                    occ_tid.append(tid)
                    occ_util.append(u)
                    occ_rem.append(rem)
                    col_buckets[base_col + tid - 1].append(grow)
                row_off.append(len(occ_tid))
            it_off.append(len(it_ids))
            cs_off.append(len(col_buckets))

        col_off = [0]
        col_rows: list[int] = []
        for bucket in col_buckets:
            col_rows.extend(bucket)
            col_off.append(len(col_rows))

        as_i64 = lambda xs: np.asarray(xs, dtype=np.int64)
        self.it_off = as_i64(it_off)
        self.it_ids = as_i64(it_ids)
        self.it_gidx = as_i64(it_gidx)
        self.row_off = as_i64(row_off)
        self.occ_tid = as_i64(occ_tid)
        self.occ_util = as_i64(occ_util)
        self.occ_rem = as_i64(occ_rem)
        self.cs_off = as_i64(cs_off)
        self.col_off = as_i64(col_off)
        self.col_rows = as_i64(col_rows)
        self.occ_total = as_i64(occ_total)
        self._root = None

    def gidx(self, item: int) -> int:
        return self._gidx[item]

    def threshold(self, value: Fraction) -> int:
        """Smallest scaled integer i with i >= value, for exact comparisons."""
        return math.ceil(value * self.scale)

    def root(self) -> "Chus":
        """Virtual empty-pattern node: one pseudo-element per sequence at tid 0
        with zero utility, so single items build through the ordinary growth op."""
        if self._root is None:
            n = self.n_sequences
            zeros = np.zeros(n, dtype=np.int64)
            self._root = Chus(
                ctx=self,
                sidx=np.arange(n, dtype=np.int64),
                off=np.arange(n + 1, dtype=np.int64),
                tids=zeros,
                acu=zeros.copy(),
                peu_seq=zeros.copy(),
                umax_seq=zeros.copy(),
            )
        return self._root


@dataclass(slots=True)
class Chus:
    """Projection node of one pattern: containing sequences + utility chains.

    ``sidx``/``off`` delimit, per containing sequence (dense index into the
    context), the slice of ``tids``/``acu`` holding its chain elements in
    ascending tid order.  ``peu_seq``/``umax_seq`` carry the per-sequence
    extension bound and best utility; totals are over all sequences.
    """

    ctx: ProjectionContext
    sidx: np.ndarray
    off: np.ndarray
    tids: np.ndarray
    acu: np.ndarray
    peu_seq: np.ndarray
    umax_seq: np.ndarray
    peu_total: int = field(init=False)
    umax_total: int = field(init=False)

    def __post_init__(self) -> None:
        self.peu_total = int(self.peu_seq.sum())
        self.umax_total = int(self.umax_seq.sum())

    @property
    def support(self) -> int:
        return len(self.sidx)

    @property
    def sid_set(self) -> frozenset[int]:
        return frozenset(int(self.ctx.sids[i]) for i in self.sidx)

    def ucs_set(self) -> tuple[Ucs, ...]:
        """Materialize the chains as inspectable objects (tests, debugging)."""
        out = []
        for k in range(len(self.sidx)):
            lo, hi = int(self.off[k]), int(self.off[k + 1])
            uls = tuple(
                UlsElement(
                    tid=int(self.tids[i]),
                    acu=int(self.acu[i]),
                    link=(i - lo + 1) if i + 1 < hi else None,
                )
                for i in range(lo, hi)
            )
            out.append(Ucs(int(self.ctx.sids[self.sidx[k]]), int(self.peu_seq[k]), uls))
        return tuple(out)

    def ucs_for(self, sid: int) -> Ucs:
        for ucs in self.ucs_set():
            if ucs.sid == sid:
                return ucs
        raise KeyError(f"sequence {sid} does not contain the pattern")


def _grow(chus: Chus, item: int, kind: int) -> Chus:
    ctx = chus.ctx
    cap = int(ctx.occ_total[ctx.gidx(item)])
    sidx, off, tids, acu, peu_seq, umax_seq = ctx.kernels.extend(
        kind,
        item,
        cap,
        ctx.it_off,
        ctx.it_ids,
        ctx.row_off,
        ctx.occ_tid,
        ctx.occ_util,
        ctx.occ_rem,
        chus.sidx,
        chus.off,
        chus.tids,
        chus.acu,
    )
    return Chus(ctx, sidx, off, tids, acu, peu_seq, umax_seq)


def build_initial_chus(ctx: ProjectionContext, item: int) -> Chus:
    """Projection node of the single-item pattern ``<(item)>``."""
    if item not in ctx._gidx:
        raise KeyError(f"item {item} is not present in the projected database")
    return _grow(ctx.root(), item, _LATER_ITEMSET)


def i_extend(t: Pattern, item: int, chus: Chus) -> tuple[Pattern, Chus]:
    """Insert ``item`` into the last itemset of ``t`` and grow its projection.

    ``item`` must exceed the current last item (itemsets stay strictly
    ascending); new chain elements arise where the item shares an itemset
    with a parent chain element.
    """
    if item <= t.last_item:
        raise ValueError(
            f"in-itemset growth requires item > {t.last_item}, got {item}"
        )
    t2 = Pattern(t.itemsets[:-1] + (t.itemsets[-1] + (item,),))
    return t2, _grow(chus, item, _SAME_ITEMSET)


def s_extend(t: Pattern, item: int, chus: Chus) -> tuple[Pattern, Chus]:
    """Append the singleton itemset ``(item)`` to ``t`` and grow its projection.

    New chain elements arise at the item's occurrences strictly after some
    parent chain element's tid.
    """
    t2 = Pattern(t.itemsets + ((item,),))
    return t2, _grow(chus, item, _LATER_ITEMSET)


def scan_extensions(
    t: Pattern, chus: Chus, max_length: int | None = None
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Candidate growth items with their utility upper bounds.

    Returns (in-itemset candidates, new-itemset candidates), each a list of
    (item, bound) ascending by item.  The bound of a candidate is the sum,
    over sequences where the grown pattern occurs, of the parent's
    per-sequence extension bound.  Both lists are empty once ``t`` has
    reached ``max_length`` items.
    """
    if max_length is not None and t.length >= max_length:
        return [], []
    ctx = chus.ctx
    fi, ri, fs, rs = ctx.kernels.scan(
        ctx.it_off,
        ctx.it_ids,
        ctx.it_gidx,
        ctx.cs_off,
        ctx.col_off,
        ctx.col_rows,
        len(ctx.items),
        chus.sidx,
        chus.off,
        chus.tids,
        chus.peu_seq,
        t.last_item,
    )
    iexts = sorted((ctx.items[g], int(r)) for g, r in zip(fi.tolist(), ri.tolist()))
    sexts = sorted((ctx.items[g], int(r)) for g, r in zip(fs.tolist(), rs.tolist()))
    return iexts, sexts


def peu(chus: Chus) -> int:
    """Extension bound of the node: per sequence, the best value of
    (element utility + remaining utility) over elements with positive
    remaining utility (zero when none has any), summed over sequences."""
    return chus.peu_total


def umax_of(chus: Chus) -> int:
    """Pattern utility: the per-sequence best element utility, summed."""
    return chus.umax_total
