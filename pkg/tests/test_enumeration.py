import numpy as np
import pytest

from qrsd.enumeration import (
    HAS_NUMBA,
    collect_affine_low_weight,
    count_low_weight,
    exists_weight_at_most,
    pack_tails,
    resolve_backend,
)

BACKENDS = ("numpy", "numba") if HAS_NUMBA else ("numpy",)


def brute_counts(tails_bits, k, width, t, w_max, min_tail):
    """Oracle: enumerate all messages of weight 1..t directly."""
    import itertools

    counts = [0] * (w_max + 1)
    for r in range(1, t + 1):
        for combo in itertools.combinations(range(k), r):
            acc = 0
            for i in combo:
                acc ^= tails_bits[i]
            w = r + acc.bit_count()
            if w <= w_max and acc.bit_count() >= min_tail:
                counts[w] += 1
    return counts


@pytest.mark.parametrize("backend", BACKENDS)
def test_count_low_weight_matches_brute_force(backend):
    rng = np.random.default_rng(9)
    for k, width in ((6, 10), (10, 10), (12, 70)):
        tails_bits = [int(rng.integers(0, 1 << 30)) for _ in range(k)]
        if width > 64:
            tails_bits = [b | (int(rng.integers(0, 1 << (width - 64))) << 64) for b in tails_bits]
        tails = pack_tails(tails_bits, width)
        for t, w_max, min_tail in ((3, 12, 0), (4, 9, 3), (2, 40, 0)):
            got = count_low_weight(tails, t, w_max, min_tail)
            expected = brute_counts(tails_bits, k, width, t, w_max, min_tail)
            assert got.tolist() == expected


def test_backends_agree():
    if not HAS_NUMBA:
        pytest.skip("numba unavailable")
    rng = np.random.default_rng(10)
    tails_bits = [int(rng.integers(0, 1 << 34)) for _ in range(20)]
    tails = pack_tails(tails_bits, 34)
    a = count_low_weight(tails, 5, 16, 0, backend="numba")
    b = count_low_weight(tails, 5, 16, 0, backend="numpy")
    assert (a == b).all()
    assert exists_weight_at_most(tails, 5, 8, backend="numba") == exists_weight_at_most(
        tails, 5, 8, backend="numpy"
    )


def test_threading_is_deterministic():
    rng = np.random.default_rng(11)
    tails = pack_tails([int(rng.integers(0, 1 << 34)) for _ in range(24)], 34)
    single = count_low_weight(tails, 5, 14, 0, threads=1)
    multi = count_low_weight(tails, 5, 14, 0, threads=4)
    assert (single == multi).all()


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.setenv("QRSD_BACKEND", "numpy")
    assert resolve_backend(None) == "numpy"
    monkeypatch.setenv("QRSD_BACKEND", "auto")
    assert resolve_backend(None) in ("numba", "numpy")
    monkeypatch.setenv("QRSD_BACKEND", "bogus")
    with pytest.raises(ValueError):
        resolve_backend(None)
    if not HAS_NUMBA:
        monkeypatch.setenv("QRSD_BACKEND", "numba")
        with pytest.raises(RuntimeError):
            resolve_backend(None)


@pytest.mark.parametrize("backend", BACKENDS)
def test_collect_affine_low_weight(backend):
    rng = np.random.default_rng(12)
    k, width = 8, 12
    tails_bits = [int(rng.integers(0, 1 << width)) for _ in range(k)]
    offset_bits = int(rng.integers(0, 1 << width))
    tails = pack_tails(tails_bits, width)
    offset = pack_tails([offset_bits], width)[0]
    msgs, wts = collect_affine_low_weight(tails, offset, 4, 9, backend=backend)
    got = {(int(m), int(w)) for m, w in zip(msgs, wts)}
    expected = set()
    import itertools

    for r in range(0, 5):
        for combo in itertools.combinations(range(k), r):
            acc = offset_bits
            msg = 0
            for i in combo:
                acc ^= tails_bits[i]
                msg |= 1 << i
            w = r + acc.bit_count()
            if w <= 9:
                expected.add((msg, w))
    assert got == expected
