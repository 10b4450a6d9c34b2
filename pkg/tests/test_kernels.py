import os
import subprocess
import sys

import numpy as np
import pytest

from galcore import kernels
from galcore._accel import HAVE_NUMBA
from galcore.context import FormalContext
from galcore.oracle import all_ref_posets

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def random_context(rng, n, m, density=0.4):
    return FormalContext(rng.random((n, m)) < density)


def test_full_mask():
    assert kernels.full_mask(0) == 0
    assert kernels.full_mask(3) == 7
    assert kernels.full_mask(64) == np.uint64(2**64 - 1)


def test_meet_table_numpy_small():
    rows = kernels.as_masks([0b011, 0b110])
    assert kernels.meet_table_np(rows, np.uint64(7)).tolist() == [7, 3, 6, 2]


@needs_numba
@pytest.mark.parametrize("seed", range(10))
def test_meet_table_backends_agree(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, 9))
    rows = rng.integers(0, 1 << 12, size=k).astype(np.uint64)
    top = np.uint64((1 << 12) - 1)
    assert np.array_equal(kernels.meet_table_nb(rows, top), kernels.meet_table_np(rows, top))


@needs_numba
@pytest.mark.parametrize("seed", range(15))
def test_concept_kernels_agree(seed):
    rng = np.random.default_rng(seed)
    ctx = random_context(rng, int(rng.integers(0, 9)), int(rng.integers(0, 9)), rng.random())
    args = (ctx.row_array, ctx.col_array, kernels.full_mask(ctx.g_count), kernels.full_mask(ctx.m_count))
    a, b = kernels.closed_extents_nb(*args), kernels.closed_extents_np(*args)
    assert np.array_equal(a, b)
    mfull = kernels.full_mask(ctx.m_count)
    assert np.array_equal(kernels.intents_of_nb(a, ctx.row_array, mfull),
                          kernels.intents_of_np(a, ctx.row_array, mfull))


def test_closed_extents_wide_context():
    rng = np.random.default_rng(3)
    ctx = random_context(rng, 64, 10, 0.2)
    ext = kernels.closed_extents(ctx.row_array, ctx.col_array, kernels.full_mask(64), kernels.full_mask(10))
    assert ext[-1] == kernels.full_mask(64)
    assert list(ext) == sorted(ext)


@needs_numba
def test_order_kernels_agree():
    rng = np.random.default_rng(0)
    posets = all_ref_posets(3)
    for _ in range(300):
        P = posets[rng.integers(len(posets))]
        Q = posets[rng.integers(len(posets))]
        if not P.size or not Q.size:
            continue
        f = rng.integers(0, Q.size, P.size)
        g = rng.integers(0, P.size, Q.size)
        a = kernels.antitone_violations_nb(P.leq, Q.leq, f)
        b = kernels.antitone_violations_np(P.leq, Q.leq, f)
        assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))
        a = kernels.adjoint_violations_nb(P.leq, Q.leq, f, g)
        b = kernels.adjoint_violations_np(P.leq, Q.leq, f, g)
        assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))


def test_numpy_backend_selected_by_env():
    code = (
        "import galcore, galcore.kernels as k;"
        "from galcore.concepts import enumerate_concepts;"
        "from galcore.context import FormalContext;"
        "ctx = FormalContext.from_pairs(3, 3, [(0, 0), (0, 1), (1, 1), (2, 2)]);"
        "print(galcore.BACKEND, k.meet_table is k.meet_table_np, len(enumerate_concepts(ctx)))"
    )
    env = dict(os.environ, GALCORE_NUMBA="0")
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == ["numpy", "True", "5"]
