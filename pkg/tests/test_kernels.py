from __future__ import annotations

import random

import numpy as np
import pytest

from husmine import MiningParams, ProjectionContext, build_initial_chus, mine
from husmine._kernels import available_backends, get_backend
from helpers import random_params_for, random_small_database, result_set, retail_database

DB = retail_database()

needs_both = pytest.mark.skipif(
    len(available_backends()) < 2, reason="compiled kernel backend not built"
)


def test_some_backend_is_active():
    from husmine._kernels import BACKEND

    assert BACKEND in available_backends()


@needs_both
def test_full_mine_identical_on_fixture():
    for mode, min_util in (("husp", 154), ("chusp", 130), ("fhusp", 100)):
        params = MiningParams(min_util=min_util, min_sup=0.4, mode=mode)
        res_c, ctr_c = mine(DB, params, kernels=get_backend("c"))
        res_py, ctr_py = mine(DB, params, kernels=get_backend("py"))
        assert result_set(res_c) == result_set(res_py)
        assert ctr_c.as_tuple() == ctr_py.as_tuple()


@needs_both
@pytest.mark.parametrize("seed", range(20))
def test_full_mine_identical_on_random_databases(seed):
    rng = random.Random(31_000 + seed)
    db = random_small_database(rng)
    for mode in ("husp", "fhusp", "chusp"):
        params = random_params_for(db, rng, mode)
        res_c, ctr_c = mine(db, params, kernels=get_backend("c"))
        res_py, ctr_py = mine(db, params, kernels=get_backend("py"))
        assert result_set(res_c) == result_set(res_py)
        assert ctr_c.as_tuple() == ctr_py.as_tuple()


@needs_both
@pytest.mark.parametrize("seed", range(8))
def test_kernel_calls_identical(seed):
    """Drive both backends through the same growth steps and compare raw arrays."""
    from husmine.projection import i_extend, s_extend, scan_extensions

    rng = random.Random(97_000 + seed)
    db = random_small_database(rng)
    ctx_c = ProjectionContext(db, kernels=get_backend("c"))
    ctx_py = ProjectionContext(db, kernels=get_backend("py"))
    for item in ctx_c.items:
        import husmine.core as core

        t = core.Pattern.of((item,))
        a = build_initial_chus(ctx_c, item)
        b = build_initial_chus(ctx_py, item)
        stack = [(t, a, b)]
        depth = 0
        while stack and depth < 40:
            depth += 1
            t, a, b = stack.pop()
            for arr_a, arr_b in (
                (a.sidx, b.sidx), (a.off, b.off), (a.tids, b.tids),
                (a.acu, b.acu), (a.peu_seq, b.peu_seq), (a.umax_seq, b.umax_seq),
            ):
                assert np.array_equal(arr_a, arr_b)
            ia, sa = scan_extensions(t, a)
            ib, sb = scan_extensions(t, b)
            assert ia == ib
            assert sa == sb
            for item2, _ in ia[:2]:
                ta, ca = i_extend(t, item2, a)
                tb, cb = i_extend(t, item2, b)
                stack.append((ta, ca, cb))
            for item2, _ in sa[:2]:
                ta, ca = s_extend(t, item2, a)
                tb, cb = s_extend(t, item2, b)
                stack.append((ta, ca, cb))
