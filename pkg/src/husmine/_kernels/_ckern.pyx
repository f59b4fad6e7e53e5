# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend; semantics identical to ``pyref``."""

import numpy as np

cimport numpy as cnp

ctypedef cnp.int64_t i64

KIND_SAME_ITEMSET = 0
KIND_LATER_ITEMSET = 1


cdef inline Py_ssize_t _lower_bound(const i64[:] a, Py_ssize_t lo, Py_ssize_t hi, i64 x) nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def extend(int kind, i64 item, Py_ssize_t cap,
           const i64[:] it_off, const i64[:] it_ids,
           const i64[:] row_off, const i64[:] occ_tid,
           const i64[:] occ_util, const i64[:] occ_rem,
           const i64[:] p_sidx, const i64[:] p_off,
           const i64[:] p_tids, const i64[:] p_acu):
    cdef Py_ssize_t m = p_sidx.shape[0]
    c_sidx = np.empty(m, dtype=np.int64)
    c_off = np.empty(m + 1, dtype=np.int64)
    c_tids = np.empty(cap, dtype=np.int64)
    c_acu = np.empty(cap, dtype=np.int64)
    c_peu = np.empty(m, dtype=np.int64)
    c_umax = np.empty(m, dtype=np.int64)
    cdef i64[:] v_sidx = c_sidx
    cdef i64[:] v_off = c_off
    cdef i64[:] v_tids = c_tids
    cdef i64[:] v_acu = c_acu
    cdef i64[:] v_peu = c_peu
    cdef i64[:] v_umax = c_umax

    cdef Py_ssize_t out_m = 0, out_k = 0, start_k
    cdef Py_ssize_t si, s, r, lo, hi, o, o_end, pp, p_end
    cdef i64 ot, pt, a, rem, run, peu_v, umax_v

    with nogil:
        v_off[0] = 0
        for si in range(m):
            s = <Py_ssize_t> p_sidx[si]
            lo = <Py_ssize_t> it_off[s]
            hi = <Py_ssize_t> it_off[s + 1]
            r = _lower_bound(it_ids, lo, hi, item)
            if r == hi or it_ids[r] != item:
                continue
            o = <Py_ssize_t> row_off[r]
            o_end = <Py_ssize_t> row_off[r + 1]
            pp = <Py_ssize_t> p_off[si]
            p_end = <Py_ssize_t> p_off[si + 1]
            start_k = out_k
            peu_v = 0
            umax_v = 0
            if kind == 0:
                while o < o_end and pp < p_end:
                    ot = occ_tid[o]
                    pt = p_tids[pp]
                    if ot == pt:
                        a = p_acu[pp] + occ_util[o]
                        rem = occ_rem[o]
                        v_tids[out_k] = ot
                        v_acu[out_k] = a
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
                run = -1
                while o < o_end:
                    ot = occ_tid[o]
                    while pp < p_end and p_tids[pp] < ot:
                        if p_acu[pp] > run:
                            run = p_acu[pp]
                        pp += 1
                    if run >= 0:
                        a = run + occ_util[o]
                        rem = occ_rem[o]
                        v_tids[out_k] = ot
                        v_acu[out_k] = a
                        out_k += 1
                        if a > umax_v:
                            umax_v = a
                        if rem > 0 and a + rem > peu_v:
                            peu_v = a + rem
                    o += 1
            if out_k > start_k:
                v_sidx[out_m] = s
                v_peu[out_m] = peu_v
                v_umax[out_m] = umax_v
                out_m += 1
                v_off[out_m] = out_k

    return (c_sidx[:out_m].copy(), c_off[:out_m + 1].copy(),
            c_tids[:out_k].copy(), c_acu[:out_k].copy(),
            c_peu[:out_m].copy(), c_umax[:out_m].copy())


def scan(const i64[:] it_off, const i64[:] it_ids, const i64[:] it_gidx,
         const i64[:] cs_off, const i64[:] col_off, const i64[:] col_rows,
         Py_ssize_t n_g,
         const i64[:] p_sidx, const i64[:] p_off,
         const i64[:] p_tids, const i64[:] p_peu, i64 last_item):
    stamp_i_arr = np.full(n_g, -1, dtype=np.int64)
    stamp_s_arr = np.full(n_g, -1, dtype=np.int64)
    rsu_i_arr = np.zeros(n_g, dtype=np.int64)
    rsu_s_arr = np.zeros(n_g, dtype=np.int64)
    found_i_arr = np.empty(n_g, dtype=np.int64)
    found_s_arr = np.empty(n_g, dtype=np.int64)
    cdef i64[:] stamp_i = stamp_i_arr
    cdef i64[:] stamp_s = stamp_s_arr
    cdef i64[:] rsu_i = rsu_i_arr
    cdef i64[:] rsu_s = rsu_s_arr
    cdef i64[:] found_i = found_i_arr
    cdef i64[:] found_s = found_s_arr

    cdef Py_ssize_t m = p_sidx.shape[0]
    cdef Py_ssize_t n_i = 0, n_s = 0
    cdef Py_ssize_t si, s, base, pp, p_end, k, col, z, z_end, grow, g
    cdef i64 peu_s

    with nogil:
        for si in range(m):
            s = <Py_ssize_t> p_sidx[si]
            peu_s = p_peu[si]
            base = <Py_ssize_t> cs_off[s]
            pp = <Py_ssize_t> p_off[si]
            p_end = <Py_ssize_t> p_off[si + 1]
            for k in range(pp, p_end):
                col = base + <Py_ssize_t> p_tids[k] - 1
                z_end = <Py_ssize_t> col_off[col + 1]
                for z in range(<Py_ssize_t> col_off[col], z_end):
                    grow = <Py_ssize_t> col_rows[z]
                    if it_ids[grow] > last_item:
                        g = <Py_ssize_t> it_gidx[grow]
                        if stamp_i[g] != si:
                            if stamp_i[g] == -1:
                                found_i[n_i] = g
                                n_i += 1
                            stamp_i[g] = si
                            rsu_i[g] += peu_s
            col = base + <Py_ssize_t> p_tids[pp]
            z_end = <Py_ssize_t> col_off[<Py_ssize_t> cs_off[s + 1]]
            for z in range(<Py_ssize_t> col_off[col], z_end):
                grow = <Py_ssize_t> col_rows[z]
                g = <Py_ssize_t> it_gidx[grow]
                if stamp_s[g] != si:
                    if stamp_s[g] == -1:
                        found_s[n_s] = g
                        n_s += 1
                    stamp_s[g] = si
                    rsu_s[g] += peu_s

    fi = found_i_arr[:n_i].copy()
    fs = found_s_arr[:n_s].copy()
    return fi, rsu_i_arr[fi], fs, rsu_s_arr[fs]
