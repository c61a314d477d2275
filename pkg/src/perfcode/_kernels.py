"""Hot inner loops, each with a numba kernel and a plain fallback.

The JIT path is used when numba imports and ``PERFCODE_DISABLE_JIT`` is unset
(or ``0``). Set ``PERFCODE_DISABLE_JIT=1`` to force the fallbacks; results are
identical either way, only speed differs (see ``benchmarks/bench_kernels.py``).

Bitmask kernels work on ``uint64`` words, so the JIT path covers graphs of at
most 64 vertices; larger inputs always take the Python-int fallback.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("PERFCODE_DISABLE_JIT", "0") in ("", "0")

WORD_BITS = 64
MATRIX_SQUARE_MIN_N = 64
INT64_HEADROOM = 2**62


def _iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --------------------------------------------------------------------- square


def square_matrix_numpy(a: np.ndarray) -> np.ndarray:
    f = a.astype(np.float32)
    sq = (f @ f > 0.5) | a
    np.fill_diagonal(sq, False)
    return sq


if numba is not None:

    @njit(cache=True)
    def _square_matrix_jit(a):
        n = a.shape[0]
        out = a.copy()
        for v in range(n):
            for u in range(n):
                if a[v, u]:
                    for x in range(n):
                        if a[u, x]:
                            out[v, x] = True
            out[v, v] = False
        return out


def square_matrix(a: np.ndarray) -> np.ndarray:
    """Boolean adjacency matrix of the square of ``a``."""
    a = np.ascontiguousarray(a, dtype=np.bool_)
    if USE_NUMBA:
        return _square_matrix_jit(a)
    return square_matrix_numpy(a)


# --------------------------------------------------------------------- exact MWIS


def _clique_cover_bound(mask, nbits, w, order):
    bound = 0
    rem = mask
    for v in order:
        if not rem >> v & 1:
            continue
        bound += w[v]
        rem &= ~(1 << v)
        cand = rem & nbits[v]
        for u in order:
            if not cand:
                break
            if cand >> u & 1:
                rem &= ~(1 << u)
                cand &= nbits[u]
        if not rem:
            break
    return bound


def mwis_bitmask_python(nbits, weights, mask):
    """Branch and bound MWIS over Python-int bitmasks.

    ``nbits[v]`` is the open neighbourhood of ``v``; only vertices in ``mask``
    are considered and each of them must have positive weight. Returns
    ``(value, chosen_mask)``. Pruning is ``bound <= best``, so when the
    optimum is unique (the callers make it so) that optimum is returned.
    """
    w = list(weights)
    order = sorted(_iter_bits(mask), key=lambda v: (-w[v], v))
    best_val, best_set = 0, 0
    stack = [(mask, 0, 0)]
    while stack:
        cur_mask, cur, chosen = stack.pop()
        changed = True
        while changed and cur_mask:
            changed = False
            for v in _iter_bits(cur_mask):
                if not cur_mask >> v & 1:
                    continue
                nb = nbits[v] & cur_mask
                if not nb:
                    cur += w[v]
                    chosen |= 1 << v
                    cur_mask &= ~(1 << v)
                    changed = True
                elif nb & (nb - 1) == 0:
                    u = nb.bit_length() - 1
                    if w[v] >= w[u]:
                        cur += w[v]
                        chosen |= 1 << v
                        cur_mask &= ~(1 << v | nb)
                        changed = True
        if not cur_mask:
            if cur > best_val:
                best_val, best_set = cur, chosen
            continue
        if cur + _clique_cover_bound(cur_mask, nbits, w, order) <= best_val:
            continue
        pick, pick_deg = -1, -1
        for v in _iter_bits(cur_mask):
            d = (nbits[v] & cur_mask).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        stack.append((cur_mask & ~(1 << pick), cur, chosen))
        stack.append((cur_mask & ~(nbits[pick] | 1 << pick), cur + w[pick], chosen | 1 << pick))
    return best_val, best_set


if numba is not None:

    @njit(cache=True)
    def _popcount(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True)
    def _mwis_jit(nbits, w, mask, order):
        n = nbits.shape[0]
        one = np.uint64(1)
        zero = np.uint64(0)
        cap = 4 * n + 8
        st_mask = np.empty(cap, dtype=np.uint64)
        st_cur = np.empty(cap, dtype=np.int64)
        st_chosen = np.empty(cap, dtype=np.uint64)
        top = 0
        st_mask[0] = mask
        st_cur[0] = 0
        st_chosen[0] = zero
        top = 1
        best_val = np.int64(0)
        best_set = zero
        while top > 0:
            top -= 1
            cur_mask = st_mask[top]
            cur = st_cur[top]
            chosen = st_chosen[top]
            changed = True
            while changed and cur_mask != zero:
                changed = False
                for v in range(n):
                    bv = one << np.uint64(v)
                    if cur_mask & bv == zero:
                        continue
                    nb = nbits[v] & cur_mask
                    if nb == zero:
                        cur += w[v]
                        chosen |= bv
                        cur_mask &= ~bv
                        changed = True
                    elif nb & (nb - one) == zero:
                        u = 0
                        while (nb >> np.uint64(u)) & one == zero:
                            u += 1
                        if w[v] >= w[u]:
                            cur += w[v]
                            chosen |= bv
                            cur_mask &= ~(bv | nb)
                            changed = True
            if cur_mask == zero:
                if cur > best_val:
                    best_val = cur
                    best_set = chosen
                continue
            # greedy clique cover bound, heaviest vertex first
            bound = np.int64(0)
            rem = cur_mask
            for i in range(order.shape[0]):
                v = order[i]
                bv = one << np.uint64(v)
                if rem & bv == zero:
                    continue
                bound += w[v]
                rem &= ~bv
                cand = rem & nbits[v]
                for j in range(i + 1, order.shape[0]):
                    if cand == zero:
                        break
                    u = order[j]
                    bu = one << np.uint64(u)
                    if cand & bu != zero:
                        rem &= ~bu
                        cand &= nbits[u]
                if rem == zero:
                    break
            if cur + bound <= best_val:
                continue
            pick = -1
            pick_deg = -1
            for v in range(n):
                if (cur_mask >> np.uint64(v)) & one != zero:
                    d = _popcount(nbits[v] & cur_mask)
                    if d > pick_deg:
                        pick = v
                        pick_deg = d
            bp = one << np.uint64(pick)
            st_mask[top] = cur_mask & ~bp
            st_cur[top] = cur
            st_chosen[top] = chosen
            top += 1
            st_mask[top] = cur_mask & ~(nbits[pick] | bp)
            st_cur[top] = cur + w[pick]
            st_chosen[top] = chosen | bp
            top += 1
        return best_val, best_set


def mwis_bitmask(nbits, weights, mask):
    """Exact MWIS restricted to ``mask`` (all weights there must be positive).

    Dispatches to the JIT kernel when possible: at most 64 vertices and the
    total weight fits comfortably in int64. Returns ``(value, chosen_mask)``.
    """
    n = len(nbits)
    if USE_NUMBA and n <= WORD_BITS and n > 0:
        total = sum(weights[v] for v in _iter_bits(mask))
        if total < INT64_HEADROOM:
            verts = sorted(_iter_bits(mask), key=lambda v: (-weights[v], v))
            nb = np.array([b & mask for b in nbits], dtype=np.uint64)
            w = np.array([weights[v] if mask >> v & 1 else 0 for v in range(n)], dtype=np.int64)
            val, chosen = _mwis_jit(nb, w, np.uint64(mask), np.array(verts, dtype=np.int64))
            return int(val), int(chosen)
    return mwis_bitmask_python(nbits, weights, mask)


# --------------------------------------------------------------------- exact covers by closed neighbourhoods


def exact_covers_python(closed, full):
    """All vertex sets whose closed neighbourhoods partition ``full``.

    ``closed[v]`` is ``N[v]`` as a bitmask. Each solution is found once: the
    least uncovered vertex must be covered by exactly one chosen ``N[u]``.
    """
    n = len(closed)
    coverers = [0] * n
    for u, c in enumerate(closed):
        for v in _iter_bits(c):
            coverers[v] |= 1 << u
    out = []
    stack = [(0, 0)]
    while stack:
        covered, chosen = stack.pop()
        if covered == full:
            out.append(chosen)
            continue
        free = full & ~covered
        v = (free & -free).bit_length() - 1
        for u in _iter_bits(coverers[v]):
            if not closed[u] & covered:
                stack.append((covered | closed[u], chosen | 1 << u))
    return out


if numba is not None:

    @njit(cache=True)
    def _exact_covers_jit(closed, full):
        n = closed.shape[0]
        one = np.uint64(1)
        zero = np.uint64(0)
        coverers = np.zeros(n, dtype=np.uint64)
        for u in range(n):
            for v in range(n):
                if (closed[u] >> np.uint64(v)) & one != zero:
                    coverers[v] |= one << np.uint64(u)
        cap = n * n + 8
        st_cov = np.empty(cap, dtype=np.uint64)
        st_ch = np.empty(cap, dtype=np.uint64)
        st_cov[0] = zero
        st_ch[0] = zero
        top = 1
        out = np.empty(16, dtype=np.uint64)
        count = 0
        while top > 0:
            top -= 1
            covered = st_cov[top]
            chosen = st_ch[top]
            if covered == full:
                if count == out.shape[0]:
                    bigger = np.empty(2 * count, dtype=np.uint64)
                    bigger[:count] = out
                    out = bigger
                out[count] = chosen
                count += 1
                continue
            v = 0
            while (covered >> np.uint64(v)) & one != zero:
                v += 1
            cv = coverers[v]
            for u in range(n):
                if (cv >> np.uint64(u)) & one != zero and closed[u] & covered == zero:
                    st_cov[top] = covered | closed[u]
                    st_ch[top] = chosen | (one << np.uint64(u))
                    top += 1
        return out[:count]


def exact_covers(closed, full):
    """Bitmasks of all vertex sets whose closed neighbourhoods partition ``full``."""
    if USE_NUMBA and 0 < len(closed) <= WORD_BITS:
        arr = np.array(closed, dtype=np.uint64)
        return [int(x) for x in _exact_covers_jit(arr, np.uint64(full))]
    return exact_covers_python(closed, full)
