"""Pure-Python kernel backend.

Mirrors the compiled backend operation by operation over the same flat int64
arrays; both must produce identical outputs.  Kept deliberately plain so it
doubles as the readable statement of the hot-loop semantics.
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

KIND_SAME_ITEMSET = 0
KIND_LATER_ITEMSET = 1


def extend(
    kind,
    item,
    cap,
    it_off,
    it_ids,
    row_off,
    occ_tid,
    occ_util,
    occ_rem,
    p_sidx,
    p_off,
    p_tids,
    p_acu,
):
    """Grow a projection by one item.

    kind 0: the new item must occur in the same itemset as a parent chain
    element (in-itemset growth); the element utility is the parent utility at
    that tid plus the occurrence utility.

    kind 1: the new item must occur strictly after some parent element's tid
    (new-itemset growth); the element utility is the running maximum of parent
    utilities at earlier tids plus the occurrence utility.

    Per surviving sequence the kernel also reports the best element utility
    and the extension bound: max over elements of (utility + remaining),
    where elements with zero remaining utility contribute zero.
    """
    m = len(p_sidx)
    c_sidx = np.empty(m, dtype=np.int64)
    c_off = np.empty(m + 1, dtype=np.int64)
    c_tids = np.empty(cap, dtype=np.int64)
    c_acu = np.empty(cap, dtype=np.int64)
    c_peu = np.empty(m, dtype=np.int64)
    c_umax = np.empty(m, dtype=np.int64)
    c_off[0] = 0
    out_m = 0
    out_k = 0
    for si in range(m):
        s = p_sidx[si]
        lo = it_off[s]
        hi = it_off[s + 1]
        r = bisect_left(it_ids, item, lo, hi)
        if r == hi or it_ids[r] != item:
            continue
        o = row_off[r]
        o_end = row_off[r + 1]
        pp = p_off[si]
        p_end = p_off[si + 1]
        start_k = out_k
        peu_v = 0
        umax_v = 0
        if kind == KIND_SAME_ITEMSET:
            while o < o_end and pp < p_end:
                ot = occ_tid[o]
                pt = p_tids[pp]
                if ot == pt:
                    a = p_acu[pp] + occ_util[o]
                    rem = occ_rem[o]
                    c_tids[out_k] = ot
                    c_acu[out_k] = a
                    out_k += 1
                    if a > umax_v:
                        umax_v = a
                    if rem > 0 and a + rem > peu_v:
                        peu_v = a + rem
                    o += 1
                    pp += 1
                elif ot < pt:
                    o += 1
                else:
                    pp += 1
        else:
            run = -1  # no parent element seen yet
            while o < o_end:
                ot = occ_tid[o]
                while pp < p_end and p_tids[pp] < ot:
                    if p_acu[pp] > run:
                        run = p_acu[pp]
                    pp += 1
                if run >= 0:
                    a = run + occ_util[o]
                    rem = occ_rem[o]
                    c_tids[out_k] = ot
                    c_acu[out_k] = a
                    out_k += 1
                    if a > umax_v:
                        umax_v = a
                    if rem > 0 and a + rem > peu_v:
                        peu_v = a + rem
                o += 1
        if out_k > start_k:
            c_sidx[out_m] = s
            c_peu[out_m] = peu_v
            c_umax[out_m] = umax_v
            out_m += 1
            c_off[out_m] = out_k
    return (
        c_sidx[:out_m].copy(),
        c_off[: out_m + 1].copy(),
        c_tids[:out_k].copy(),
        c_acu[:out_k].copy(),
        c_peu[:out_m].copy(),
        c_umax[:out_m].copy(),
    )


def scan(
    it_off,
    it_ids,
    it_gidx,
    cs_off,
    col_off,
    col_rows,
    n_g,
    p_sidx,
    p_off,
    p_tids,
    p_peu,
    last_item,
):
    """Collect candidate growth items over the projection.

    Same-itemset candidates: items greater than ``last_item`` sharing an
    itemset with a parent chain element.  Later-itemset candidates: items in
    any itemset strictly after the first parent element's tid.  Each candidate
    accumulates, once per sequence, that sequence's extension bound — the sum
    is the candidate's utility upper bound over sequences it occurs in.
    """
    stamp_i = np.full(n_g, -1, dtype=np.int64)
    stamp_s = np.full(n_g, -1, dtype=np.int64)
    rsu_i = np.zeros(n_g, dtype=np.int64)
    rsu_s = np.zeros(n_g, dtype=np.int64)
    found_i: list[int] = []
    found_s: list[int] = []
    m = len(p_sidx)
    for si in range(m):
        s = p_sidx[si]
        peu_s = p_peu[si]
        base = cs_off[s]
        pp = p_off[si]
        p_end = p_off[si + 1]
        for k in range(pp, p_end):
            col = base + p_tids[k] - 1
            for z in range(col_off[col], col_off[col + 1]):
                grow = col_rows[z]
                if it_ids[grow] > last_item:
                    g = it_gidx[grow]
                    if stamp_i[g] != si:
                        if stamp_i[g] == -1:
                            found_i.append(int(g))
                        stamp_i[g] = si
                        rsu_i[g] += peu_s
        first_col = base + p_tids[pp]  # column index of tid first+1
        for z in range(col_off[first_col], col_off[cs_off[s + 1]]):
            grow = col_rows[z]
            g = it_gidx[grow]
            if stamp_s[g] != si:
                if stamp_s[g] == -1:
                    found_s.append(int(g))
                stamp_s[g] = si
                rsu_s[g] += peu_s
    fi = np.asarray(found_i, dtype=np.int64)
    fs = np.asarray(found_s, dtype=np.int64)
    return fi, rsu_i[fi], fs, rsu_s[fs]
