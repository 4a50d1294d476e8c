import numpy as np
import pytest

from qrsd import ring
from qrsd.codes import Code, binary_code, is_self_dual, partial_weights
from qrsd.ring import F2, F2U
from qrsd.transforms import extend, neighbour, neighbour_chain, place_high_bits

import oracles


def pairs_code(n):
    return binary_code(n, [0b11 << (2 * i) for i in range(n // 2)])


def f2u_pairs_code(n):
    rows = []
    for i in range(n // 2):
        coords = [0] * n
        coords[2 * i] = coords[2 * i + 1] = 1
        rows.append(ring.vec_from_coords(coords))
    return Code(F2U, n, rows)


def random_x_with_unit_inner(rng, n, ring_id):
    elems = ring.elements(ring_id)
    while True:
        x = ring.vec_from_coords([elems[int(i)] for i in rng.integers(0, len(elems), size=n)])
        if ring.vec_inner(x, x) == 1:
            return x


def test_extend_tiny_example():
    code = binary_code(2, [0b11])
    out = extend(code, ring.parse_vector("10", F2), 1)
    assert out.n == 4 and out.k == 2
    got = {a for a, _ in out.rows}
    assert got == {
        ring.parse_vector("1010", F2)[0],
        ring.parse_vector("1111", F2)[0],
    }
    assert is_self_dual(out)
    assert partial_weights(out, 4).d == 2


def test_extend_requires_unit_inner_product():
    code = binary_code(2, [0b11])
    with pytest.raises(ValueError):
        extend(code, ring.parse_vector("11", F2), 1)  # <X,X> = 0
    with pytest.raises(ValueError):
        extend(code, ring.parse_vector("10", F2), 0)  # c not a unit
    with pytest.raises(ValueError):
        extend(binary_code(2, [0b01]), ring.parse_vector("10", F2), 1)


def test_extend_random_binary():
    rng = np.random.default_rng(21)
    for n in (8, 12, 16):
        code = pairs_code(n)
        x = random_x_with_unit_inner(rng, n, F2)
        out = extend(code, x, 1)
        assert out.n == n + 2 and is_self_dual(out)


def test_extend_random_f2u_both_units():
    rng = np.random.default_rng(22)
    for n in (6, 10, 14):
        code = f2u_pairs_code(n)
        for c in ring.units(F2U):
            x = random_x_with_unit_inner(rng, n, F2U)
            out = extend(code, x, c)
            assert out.n == n + 2 and is_self_dual(out)
            from qrsd.codes import gray_image

            image = gray_image(out)
            assert image.n == 2 * n + 4 and is_self_dual(image)


def test_neighbour_tiny_example():
    code = binary_code(4, [ring.parse_vector("1100", F2)[0], ring.parse_vector("0011", F2)[0]])
    x = ring.parse_vector("1010", F2)[0]
    out, degenerate = neighbour(code, x)
    assert not degenerate
    words = set()
    for m in range(4):
        acc = 0
        for i, (a, _) in enumerate(out.rows):
            if (m >> i) & 1:
                acc ^= a
        words.add(acc)
    expected = {
        ring.parse_vector(w, F2)[0] for w in ("0000", "1111", "1010", "0101")
    }
    assert words == expected
    assert is_self_dual(out)


def test_neighbour_degenerate_returns_same_code():
    code = pairs_code(8)
    x = 0b1111  # sum of the first two rows, inside the code
    out, degenerate = neighbour(code, x)
    assert degenerate and out is code


def test_neighbour_rejects_odd_weight():
    with pytest.raises(ValueError):
        neighbour(pairs_code(8), 0b111)
    with pytest.raises(ValueError):
        neighbour(Code(F2U, 2, [ring.parse_vector("11", F2U)]), 0b11)


def test_neighbour_intersection_has_codimension_one():
    rng = np.random.default_rng(23)
    code = pairs_code(16)
    for _ in range(10):
        x = int(rng.integers(0, 1 << 16))
        if x.bit_count() % 2:
            x ^= 1
        out, degenerate = neighbour(code, x)
        if degenerate:
            continue
        assert is_self_dual(out)
        # dim(C cap D) = k - 1: stack both generators, rank = k + 1
        from qrsd.codes import echelon_binary

        stacked = [a for a, _ in code.rows] + [a for a, _ in out.rows]
        _, pivots = echelon_binary(stacked, 16)
        assert len(pivots) == code.k + 1
        # applying the same x twice returns a code containing x both times
        again, degenerate2 = neighbour(out, x)
        assert degenerate2  # x is now inside


def test_neighbour_chain():
    assert neighbour_chain(pairs_code(8), []) == []
    rng = np.random.default_rng(24)
    code = pairs_code(12)
    xs = []
    current = code
    while len(xs) < 3:
        x = int(rng.integers(0, 1 << 12))
        if x.bit_count() % 2:
            x ^= 1
        nxt, degenerate = neighbour(current, x)
        if degenerate:
            continue
        xs.append(x)
        current = nxt
    chain = neighbour_chain(code, xs)
    assert len(chain) == 3
    assert all(is_self_dual(c) for c in chain)
    # degenerate step reports its index
    with pytest.raises(ValueError) as err:
        neighbour_chain(code, [xs[0], xs[0]])
    assert "step 1" in str(err.value)


def test_place_high_bits():
    assert place_high_bits("101", 6) == 0b101000
    assert place_high_bits("1", 1) == 1
    with pytest.raises(ValueError):
        place_high_bits("11", 1)
