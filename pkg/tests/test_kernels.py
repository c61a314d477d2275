import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfcode import _kernels
from perfcode.gen import GenConfig, make_rng, random_graph

jit = pytest.mark.skipif(_kernels.numba is None, reason="numba not importable")


def _random(seed, n, p):
    return random_graph(GenConfig(n, p, seed=seed))


@jit
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 60), st.floats(0.0, 1.0))
def test_square_kernels_agree(seed, n, p):
    a = _random(seed, n, p).adjacency_matrix()
    assert np.array_equal(_kernels._square_matrix_jit(a), _kernels.square_matrix_numpy(a))


@jit
@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 40), st.floats(0.05, 0.9))
def test_mwis_kernels_agree(seed, n, p):
    g = _random(seed, n, p)
    rng = make_rng(seed, 1)
    weights = [int(x) for x in rng.integers(1, 1000, size=n)]
    mask = int(rng.integers(0, 1 << min(n, 62))) | (1 << (n - 1))
    nbits = list(g.adjacency_bits)
    py = _kernels.mwis_bitmask_python(nbits, weights, mask)
    verts = sorted((v for v in range(n) if mask >> v & 1), key=lambda v: (-weights[v], v))
    nb = np.array([b & mask for b in nbits], dtype=np.uint64)
    w = np.array([weights[v] if mask >> v & 1 else 0 for v in range(n)], dtype=np.int64)
    val, chosen = _kernels._mwis_jit(nb, w, np.uint64(mask), np.array(verts, dtype=np.int64))
    assert int(val) == py[0]
    assert g.is_independent(int(chosen)) and int(chosen) & ~mask == 0
    assert sum(weights[v] for v in range(n) if int(chosen) >> v & 1) == py[0]


@jit
@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 18), st.floats(0.0, 0.8))
def test_exact_cover_kernels_agree(seed, n, p):
    g = _random(seed, n, p)
    closed = [g.closed_bits(v) for v in range(n)]
    arr = np.array(closed, dtype=np.uint64)
    jit_out = sorted(int(x) for x in _kernels._exact_covers_jit(arr, np.uint64(g.full_mask)))
    assert jit_out == sorted(_kernels.exact_covers_python(closed, g.full_mask))


def test_disable_flag_selects_fallback():
    env = dict(os.environ, PERFCODE_DISABLE_JIT="1")
    code = "from perfcode import _kernels; print(_kernels.USE_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_fallback_path_end_to_end():
    env = dict(os.environ, PERFCODE_DISABLE_JIT="1")
    code = (
        "from perfcode import *\n"
        "w = WeightedGraph(Graph.path(5), (5, 1, 1, 1, 1))\n"
        "print(solve_wed(w, Objective.MAXIMIZE, Strategy.EXACT).vertices)\n"
        "print(mwis_exact(WeightedGraph.unit(Graph.cycle(7))).total_weight)\n"
        "print(len(square(Graph.path(80)).edges()))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split("\n")[:3] == ["(0, 3)", "3", str(79 + 78)]
