"""Low-weight codeword counting kernels.

Given a systematic generator, every codeword is a message XOR of rows;
its weight is the message weight plus the weight of the accumulated
"tail" (the restriction to the non-identity columns, packed into 64-bit
words).  The kernels walk all messages of weight 1..t in lexicographic
DFS order, doing one XOR per visited node, and histogram the codeword
weights up to w_max.  `min_tail_weight` implements the two-information-
set de-duplication rule: the second pass only counts codewords whose
tail weight exceeds t.

Two interchangeable implementations are provided:

* a numba @njit kernel (fast path, released GIL so first-index ranges
  can be spread over threads), and
* a pure-numpy fallback that expands whole combination levels as arrays.

Selection: the QRSD_BACKEND environment variable ("numba", "numpy" or
"auto"), overridable per call; "auto" means numba when importable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

_BACKEND_ENV = "QRSD_BACKEND"


def resolve_backend(backend: str | None = None) -> str:
    """Pick "numba" or "numpy" from the argument or QRSD_BACKEND."""
    choice = backend or os.environ.get(_BACKEND_ENV, "auto")
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown enumeration backend {choice!r}")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return choice


def pack_tails(tails: list[int], width: int) -> np.ndarray:
    """Pack per-row tail bit masks into a (k, words) uint64 array."""
    words = max(1, (width + 63) // 64)
    out = np.zeros((len(tails), words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for r, bits in enumerate(tails):
        for w in range(words):
            out[r, w] = (bits >> (64 * w)) & mask
    return out


if HAS_NUMBA:

    @njit(cache=True, nogil=True, inline="always")
    def _popcnt64(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + (
            (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
        )
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True, nogil=True)
    def _count_range_numba(tails, t, w_max, min_tail_weight, first_lo, first_hi):
        k, words = tails.shape
        counts = np.zeros(w_max + 1, dtype=np.int64)
        idx = np.empty(t, dtype=np.int64)
        acc = np.zeros((t + 1, words), dtype=np.uint64)
        for first in range(first_lo, first_hi):
            depth = 0
            idx[0] = first
            while True:
                j = idx[depth]
                if j >= k or (depth == 0 and j != first):
                    if depth == 0:
                        break
                    depth -= 1
                    idx[depth] += 1
                    continue
                tail_wt = 0
                for w in range(words):
                    v = acc[depth, w] ^ tails[j, w]
                    acc[depth + 1, w] = v
                    tail_wt += _popcnt64(v)
                total = depth + 1 + tail_wt
                if total <= w_max and tail_wt >= min_tail_weight:
                    counts[total] += 1
                if depth + 1 < t:
                    depth += 1
                    idx[depth] = j + 1
                else:
                    idx[depth] += 1
        return counts


    @njit(cache=True, nogil=True)
    def _collect_affine_numba(tails, offset, t, w_max, out_msgs, out_wts):
        """Messages u (weight <= t) with wt(u) + wt(u.T ^ offset) <= w_max.

        Returns the number of hits written to out_msgs (message bit
        masks) and out_wts; enumeration stops when the buffer is full.
        """
        k, words = tails.shape
        cap = out_msgs.shape[0]
        hits = 0
        # the empty message (the offset word itself)
        base_wt = 0
        for w in range(words):
            base_wt += _popcnt64(offset[w])
        if base_wt <= w_max and hits < cap:
            out_msgs[hits] = 0
            out_wts[hits] = base_wt
            hits += 1
        idx = np.empty(max(t, 1), dtype=np.int64)
        acc = np.zeros((t + 1, words), dtype=np.uint64)
        msk = np.zeros(t + 1, dtype=np.uint64)
        for w in range(words):
            acc[0, w] = offset[w]
        for first in range(k):
            depth = 0
            idx[0] = first
            while True:
                j = idx[depth]
                if j >= k or (depth == 0 and j != first):
                    if depth == 0:
                        break
                    depth -= 1
                    idx[depth] += 1
                    continue
                tail_wt = 0
                for w in range(words):
                    v = acc[depth, w] ^ tails[j, w]
                    acc[depth + 1, w] = v
                    tail_wt += _popcnt64(v)
                msk[depth + 1] = msk[depth] | (np.uint64(1) << np.uint64(j))
                if depth + 1 + tail_wt <= w_max and hits < cap:
                    out_msgs[hits] = msk[depth + 1]
                    out_wts[hits] = depth + 1 + tail_wt
                    hits += 1
                if depth + 1 < t:
                    depth += 1
                    idx[depth] = j + 1
                else:
                    idx[depth] += 1
        return hits

    @njit(cache=True, nogil=True)
    def _exists_below_numba(tails, t, w_max, first_lo, first_hi):
        k, words = tails.shape
        idx = np.empty(t, dtype=np.int64)
        acc = np.zeros((t + 1, words), dtype=np.uint64)
        for first in range(first_lo, first_hi):
            depth = 0
            idx[0] = first
            while True:
                j = idx[depth]
                if j >= k or (depth == 0 and j != first):
                    if depth == 0:
                        break
                    depth -= 1
                    idx[depth] += 1
                    continue
                tail_wt = 0
                for w in range(words):
                    v = acc[depth, w] ^ tails[j, w]
                    acc[depth + 1, w] = v
                    tail_wt += _popcnt64(v)
                if depth + 1 + tail_wt <= w_max:
                    return True
                if depth + 1 < t:
                    depth += 1
                    idx[depth] = j + 1
                else:
                    idx[depth] += 1
        return False


_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def _popcount_u64(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr).astype(np.int64)
    x = arr.copy()
    x -= (x >> np.uint64(1)) & _M1
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return ((x * _H01) >> np.uint64(56)).astype(np.int64)


def _count_range_numpy(tails, t, w_max, min_tail_weight, first_lo, first_hi):
    """Level-by-level combination expansion; one chunk per first index."""
    k = tails.shape[0]
    counts = np.zeros(w_max + 1, dtype=np.int64)
    for first in range(first_lo, first_hi):
        last = np.array([first], dtype=np.int64)
        xor = tails[last].copy()
        depth = 1
        while True:
            tail_wt = _popcount_u64(xor).sum(axis=1)
            total = tail_wt + depth
            keep = (total <= w_max) & (tail_wt >= min_tail_weight)
            if keep.any():
                counts += np.bincount(total[keep], minlength=w_max + 1)
            if depth == t:
                break
            n_child = k - 1 - last
            total_children = int(n_child.sum())
            if total_children == 0:
                break
            parent = np.repeat(np.arange(last.shape[0]), n_child)
            starts = np.zeros(last.shape[0], dtype=np.int64)
            np.cumsum(n_child[:-1], out=starts[1:])
            offsets = np.arange(total_children, dtype=np.int64) - starts[parent]
            child = last[parent] + 1 + offsets
            xor = xor[parent] ^ tails[child]
            last = child
            depth += 1
    return counts


def _collect_affine_numpy(tails, offset, t, w_max, out_msgs, out_wts):
    k = tails.shape[0]
    cap = out_msgs.shape[0]
    hits = 0
    base_wt = int(_popcount_u64(offset).sum())
    if base_wt <= w_max and hits < cap:
        out_msgs[hits] = 0
        out_wts[hits] = base_wt
        hits += 1
    last = np.arange(k, dtype=np.int64)
    xor = tails ^ offset[None, :]
    msgs = (np.uint64(1) << last.astype(np.uint64))
    depth = 1
    while True:
        wt = _popcount_u64(xor).sum(axis=1) + depth
        keep = np.nonzero(wt <= w_max)[0]
        for i in keep:
            if hits >= cap:
                break
            out_msgs[hits] = msgs[i]
            out_wts[hits] = wt[i]
            hits += 1
        if depth == t or hits >= cap:
            break
        n_child = k - 1 - last
        total = int(n_child.sum())
        if total == 0:
            break
        parent = np.repeat(np.arange(last.shape[0]), n_child)
        starts = np.zeros(last.shape[0], dtype=np.int64)
        np.cumsum(n_child[:-1], out=starts[1:])
        offs = np.arange(total, dtype=np.int64) - starts[parent]
        child = last[parent] + 1 + offs
        xor = xor[parent] ^ tails[child]
        msgs = msgs[parent] | (np.uint64(1) << child.astype(np.uint64))
        last = child
        depth += 1
    return hits


def collect_affine_low_weight(
    tails: np.ndarray,
    offset: np.ndarray,
    t: int,
    w_max: int,
    cap: int = 4096,
    backend: str | None = None,
):
    """All messages of weight <= t whose offset codeword weighs <= w_max.

    Returns (message bit masks, weights); the message space must have at
    most 64 rows so masks fit one word.
    """
    k = int(tails.shape[0])
    if k > 64:
        raise ValueError("message masks need k <= 64")
    out_msgs = np.zeros(cap, dtype=np.uint64)
    out_wts = np.zeros(cap, dtype=np.int64)
    if k == 0:
        return out_msgs[:0], out_wts[:0]
    t = min(t, k)
    impl = resolve_backend(backend)
    fn = _collect_affine_numba if impl == "numba" else _collect_affine_numpy
    hits = fn(tails, offset, t, w_max, out_msgs, out_wts)
    if hits >= cap:
        raise ValueError(f"low-weight collection overflowed the {cap}-entry buffer")
    return out_msgs[:hits], out_wts[:hits]


def _exists_below_numpy(tails, t, w_max, first_lo, first_hi):
    for first in range(first_lo, first_hi):
        counts = _count_range_numpy(tails, t, w_max, 0, first, first + 1)
        if counts.any():
            return True
    return False


def exists_weight_at_most(
    tails: np.ndarray,
    t: int,
    w_max: int,
    backend: str | None = None,
) -> bool:
    """Early-exit variant: is there any message of weight 1..t whose
    codeword weight is <= w_max?"""
    k = int(tails.shape[0])
    if k == 0 or t <= 0:
        return False
    t = min(t, k)
    impl = resolve_backend(backend)
    fn = _exists_below_numba if impl == "numba" else _exists_below_numpy
    return bool(fn(tails, t, w_max, 0, k))


def _split_ranges(k: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, k))
    bounds = np.linspace(0, k, pieces + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]


def count_low_weight(
    tails: np.ndarray,
    t: int,
    w_max: int,
    min_tail_weight: int = 0,
    threads: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """Histogram codeword weights over all messages of weight 1..t.

    Returns an int64 array c with c[w] = number of visited codewords of
    weight w, for w <= w_max, subject to tail weight >= min_tail_weight.
    Deterministic and independent of threading/backends.
    """
    k = int(tails.shape[0])
    counts = np.zeros(w_max + 1, dtype=np.int64)
    if k == 0 or t <= 0:
        return counts
    t = min(t, k)
    impl = resolve_backend(backend)
    fn = _count_range_numba if impl == "numba" else _count_range_numpy
    ranges = _split_ranges(k, threads)
    if len(ranges) == 1:
        return counts + fn(tails, t, w_max, min_tail_weight, 0, k)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        futures = [
            pool.submit(fn, tails, t, w_max, min_tail_weight, lo, hi)
            for lo, hi in ranges
        ]
        for fut in futures:
            counts += fut.result()
    return counts
