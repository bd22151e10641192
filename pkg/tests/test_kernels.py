"""Compiled kernels agree with their own uncompiled source."""

import numpy as np
import pytest

from posetqn import _kernels as K
from posetqn import constructions as C
from posetqn.poset import sample_linear_extensions

from conftest import brute_lds, random_poset

pytestmark = pytest.mark.skipif(not K.USE_NUMBA, reason="numba backend disabled")


def py(kernel):
    return kernel.py_func


def test_backend_flag():
    assert K.BACKEND == "numba"


@pytest.mark.parametrize("seed", range(10))
def test_lds(seed):
    seq = np.random.default_rng(seed).permutation(40).astype(np.int64)
    assert K.lds_length(seq) == py(K.lds_length)(seq) == brute_lds(seq.tolist())
    lv, pr = K.lds_levels(seq)
    lv2, pr2 = py(K.lds_levels)(seq)
    assert np.array_equal(lv, lv2) and np.array_equal(pr, pr2)


@pytest.mark.parametrize("rec", [C.build_R(4), C.build_P(4), C.build_planar_hp(5)],
                         ids=lambda r: f"{r.family}-{r.parameter}")
def test_batches(rec):
    P = rec.poset
    orders = sample_linear_extensions(P, 50, 1)
    E = P.covers
    eu, ev = E[:, 0].copy(), E[:, 1].copy()
    assert np.array_equal(K.max_rainbow_batch(orders, eu, ev), py(K.max_rainbow_batch)(orders, eu, ev))
    qid = np.arange(len(E), dtype=np.int64) % 3
    assert np.array_equal(K.queue_violations_batch(orders, eu, ev, qid),
                          py(K.queue_violations_batch)(orders, eu, ev, qid))
    px = np.random.default_rng(0).permutation(P.n).astype(np.int64)
    py_ = np.random.default_rng(1).permutation(P.n).astype(np.int64)
    a = K.dxdy_batch(orders, px, py_)
    b = py(K.dxdy_batch)(orders, px, py_)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_sampling_identical():
    P = C.build_R(4).poset
    up_ptr, up_idx, indeg, *_ = P._csr
    u = np.random.default_rng(5).random((20, P.n))
    assert np.array_equal(K.sample_orders(up_ptr, up_idx, indeg, u),
                          py(K.sample_orders)(up_ptr, up_idx, indeg, u))


def test_scan_identical():
    rec = C.build_R(3)
    up_ptr, up_idx, indeg, *_ = rec.poset._csr
    px, py_ = rec.realizer.lx.position.copy(), rec.realizer.ly.position.copy()
    a = K.scan_extensions_dxdy(up_ptr, up_idx, indeg, px, py_, 10**6)
    b = py(K.scan_extensions_dxdy)(up_ptr, up_idx, indeg, px, py_, 10**6)
    assert a[0] == b[0] == 160
    assert all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b))


def test_exact_search_identical():
    P = C.build_kww(3).poset
    up_ptr, up_idx, indeg, in_ptr, in_idx, eu, _ = P._csr
    a = K.exact_qn_search(up_ptr, up_idx, indeg, in_ptr, in_idx, eu, 10, 1, 10**6)
    b = py(K.exact_qn_search)(up_ptr, up_idx, indeg, in_ptr, in_idx, eu, 10, 1, 10**6)
    assert a[0] == b[0] == 3
    assert np.array_equal(a[1], b[1]) and a[2] == b[2]


@pytest.mark.parametrize("seed", range(5))
def test_matching_identical(seed):
    import random
    P = random_poset(30, 0.1, random.Random(seed))
    assert np.array_equal(K.bipartite_matching(P.lt), py(K.bipartite_matching)(P.lt))
