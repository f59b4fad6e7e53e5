"""The pattern-growth miner: three output modes and four pruning rules.

Modes: ``husp`` keeps every pattern whose utility meets the threshold,
``fhusp`` additionally requires minimum support, ``chusp`` keeps only the
frequent high-utility patterns with no proper super-pattern of equal support.

Pruning never changes the output, only the work done: utilization filtering
removes hopeless items up front, the extension bound stops exhausted nodes,
the candidate bound drops hopeless growth items, and support anti-monotonicity
cuts infrequent branches in the frequency-constrained modes.  Each rule can be
disabled individually, which is how the safety property is tested.
"""

from __future__ import annotations

import sys
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .core import Pattern, QSequenceDatabase, pattern_contains
from .projection import (
    Chus,
    ProjectionContext,
    build_initial_chus,
    i_extend,
    s_extend,
    scan_extensions,
)
from .utility import compute_swu_per_item

MODES = ("husp", "fhusp", "chusp")
PRUNES = ("swu", "peu", "rsu", "msp")


@dataclass(frozen=True)
class MiningParams:
    """Thresholds and mode for one mining run.

    ``min_sup`` is an absolute count when given as ``int`` and a ratio of the
    database size when given as ``float`` or ``Fraction`` (must then lie in
    (0, 1]).  ``max_length`` caps the total item count of mined patterns;
    ``None`` means unlimited.
    """

    min_util: Fraction | int | str
    min_sup: int | float | Fraction = 1
    max_length: int | None = None
    mode: str = "husp"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if Fraction(self.min_util) < 0:
            raise ValueError(f"min_util must be >= 0, got {self.min_util}")
        if self.max_length is not None and self.max_length < 1:
            raise ValueError(f"max_length must be >= 1, got {self.max_length}")

    @property
    def min_util_value(self) -> Fraction:
        return Fraction(self.min_util)


@dataclass(frozen=True, slots=True)
class MinedPattern:
    """One output row: pattern, its utility, and its support count."""

    pattern: Pattern
    umax: Fraction
    support: int

    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.pattern.itemsets


@dataclass(slots=True)
class Counters:
    """Search-effort statistics for one run."""

    candidates_generated: int = 0
    pruned_swu: int = 0
    pruned_peu: int = 0
    pruned_rsu: int = 0
    pruned_msp: int = 0

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (
            self.candidates_generated,
            self.pruned_swu,
            self.pruned_peu,
            self.pruned_rsu,
            self.pruned_msp,
        )


@dataclass
class MinerState:
    """Closedness bookkeeping for a chusp run.

    ``fhusp_log`` records every frequent high-utility pattern encountered;
    ``chusp_set`` holds the current closed candidates and ``not_chusp_set``
    the patterns already known non-closed.  The two sets stay disjoint and
    the candidate set stays inside the log.
    """

    chusp_set: set = field(default_factory=set)
    not_chusp_set: set = field(default_factory=set)
    fhusp_log: dict = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class ExtensionRecord:
    """Trace of one growth step, for bound-soundness checking.

    Utilities are profit-scaled integers; comparisons are scale-invariant.
    """

    parent: Pattern
    child: Pattern
    parent_peu: int
    child_rsu: int
    child_umax: int
    child_support: int


def resolve_min_sup(min_sup: int | float | Fraction, n: int) -> int:
    """Turn a support threshold into an absolute count over ``n`` sequences.

    Ratios resolve as max(1, floor(ratio * n)); absolute counts pass through.
    """
    if n < 1:
        raise ValueError("database must contain at least one sequence")
    if isinstance(min_sup, int) and not isinstance(min_sup, bool):
        if min_sup < 1:
            raise ValueError(f"absolute min_sup must be >= 1, got {min_sup}")
        return min_sup
    ratio = Fraction(min_sup)
    if not 0 < ratio <= 1:
        raise ValueError(f"min_sup ratio must be in (0, 1], got {min_sup}")
    return max(1, int(ratio * n))


def check_closed(t: MinedPattern, t_prime: MinedPattern, state: MinerState) -> None:
    """Update the closed-candidate sets for a recorded pattern ``t_prime``
    grown from ``t`` (both frequent high-utility).

    Equal support means ``t`` has a proper super-pattern of the same support
    and is therefore not closed; otherwise both stay candidates (``t`` only
    if not already rejected).
    """
    if t.support == t_prime.support:
        state.chusp_set.discard(t.key())
        state.not_chusp_set.add(t.key())
        state.chusp_set.add(t_prime.key())
    else:
        state.chusp_set.add(t_prime.key())
        if t.key() not in state.not_chusp_set:
            state.chusp_set.add(t.key())


def final_closed_filter(state: MinerState) -> list[MinedPattern]:
    """Exact closedness pass over the completed run.

    A candidate survives iff no strictly larger pattern in the log has equal
    support and contains it.  The incremental check above only sees one
    growth chain, so this global pass is what guarantees the definition;
    containment is tested inside equal-support groups only.
    """
    by_support: dict[int, list[MinedPattern]] = defaultdict(list)
    for rec in state.fhusp_log.values():
        by_support[rec.support].append(rec)
    out = []
    for key in state.chusp_set:
        rec = state.fhusp_log[key]
        group = by_support[rec.support]
        if not any(
            q.pattern.length > rec.pattern.length
            and pattern_contains(q.pattern, rec.pattern)
            for q in group
        ):
            out.append(rec)
    return canonical_order(out)


def canonical_order(records: Iterable[MinedPattern]) -> list[MinedPattern]:
    """Descending utility, ties broken by ascending pattern order."""
    return sorted(records, key=lambda r: (-r.umax, r.pattern.itemsets))


def mine(
    db: QSequenceDatabase,
    params: MiningParams,
    *,
    disable: Iterable[str] = (),
    extension_hook: Callable[[ExtensionRecord], None] | None = None,
    kernels=None,
) -> tuple[list[MinedPattern], Counters]:
    """Mine ``db`` according to ``params``; returns (patterns, counters).

    ``disable`` names pruning rules ('swu', 'peu', 'rsu', 'msp') to switch
    off — the result set is unaffected, only the counters and runtime.
    ``extension_hook`` receives an ``ExtensionRecord`` per constructed growth
    step.  Identical inputs produce identical outputs and counters.
    """
    disabled = frozenset(disable)
    unknown = disabled - set(PRUNES)
    if unknown:
        raise ValueError(f"unknown pruning rules: {sorted(unknown)}")
    mode = params.mode
    min_util = params.min_util_value
    counters = Counters()
    if not db.sequences:
        return [], counters
    min_sup_abs = (
        resolve_min_sup(params.min_sup, len(db.sequences)) if mode != "husp" else 1
    )

    swu = compute_swu_per_item(db)
    if "swu" in disabled:
        keep = None
    else:
        keep = {item for item, value in swu.items() if value >= min_util}
        counters.pruned_swu = len(swu) - len(keep)

    ctx = ProjectionContext(db, keep=keep, kernels=kernels)
    threshold = ctx.threshold(min_util)
    scale = ctx.scale

    state = MinerState()
    results: dict[tuple, MinedPattern] = {}

    # depth equals pattern length, bounded by the longest filtered sequence
    limit = ctx.max_seq_length * 8 + 1000
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)

    def grow(pattern: Pattern, chus: Chus, parent_rec: MinedPattern | None) -> None:
        counters.candidates_generated += 1
        support = chus.support
        frequent = support >= min_sup_abs
        if mode != "husp" and not frequent and "msp" not in disabled:
            counters.pruned_msp += 1
            return
        rec = None
        if chus.umax_total >= threshold and (mode == "husp" or frequent):
            rec = MinedPattern(pattern, Fraction(chus.umax_total, scale), support)
            if mode == "chusp":
                state.fhusp_log[rec.key()] = rec
                if parent_rec is not None:
                    check_closed(parent_rec, rec, state)
                else:
                    state.chusp_set.add(rec.key())
            else:
                results[rec.key()] = rec
        if params.max_length is not None and pattern.length >= params.max_length:
            return
        if chus.peu_total < threshold and "peu" not in disabled:
            counters.pruned_peu += 1
            return
        iexts, sexts = scan_extensions(pattern, chus, params.max_length)
        for item, rsu in iexts:
            if rsu < threshold and "rsu" not in disabled:
                counters.pruned_rsu += 1
                continue
            child, child_chus = i_extend(pattern, item, chus)
            if extension_hook is not None:
                extension_hook(
                    ExtensionRecord(
                        pattern,
                        child,
                        chus.peu_total,
                        rsu,
                        child_chus.umax_total,
                        child_chus.support,
                    )
                )
            grow(child, child_chus, rec)
        for item, rsu in sexts:
            if rsu < threshold and "rsu" not in disabled:
                counters.pruned_rsu += 1
                continue
            child, child_chus = s_extend(pattern, item, chus)
            if extension_hook is not None:
                extension_hook(
                    ExtensionRecord(
                        pattern,
                        child,
                        chus.peu_total,
                        rsu,
                        child_chus.umax_total,
                        child_chus.support,
                    )
                )
            grow(child, child_chus, rec)

    for item in ctx.items:
        chus = build_initial_chus(ctx, item)
        if chus.support == 0:
            continue
        grow(Pattern.of((item,)), chus, None)

    if mode == "chusp":
        return final_closed_filter(state), counters
    return canonical_order(results.values()), counters
