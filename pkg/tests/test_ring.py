import itertools

import numpy as np
import pytest

from qrsd import ring
from qrsd.ring import F2, F2U, ONE, ONE_PLUS_U, U, ZERO

import oracles


def test_add_examples():
    assert ring.add(U, ONE) == ONE_PLUS_U
    assert ring.add(ONE_PLUS_U, ONE_PLUS_U) == ZERO
    assert ring.add(ONE, ZERO) == ONE


def test_mul_examples():
    assert ring.mul(U, U) == ZERO
    assert ring.mul(ONE_PLUS_U, ONE_PLUS_U) == ONE
    assert ring.mul(ONE_PLUS_U, U) == U


def test_is_unit_examples():
    assert ring.is_unit(ONE_PLUS_U)
    assert not ring.is_unit(U)
    assert not ring.is_unit(ZERO)
    assert ring.is_unit(ONE)


def test_units_by_brute_force():
    for x in ring.elements(F2U):
        invertible = any(ring.mul(x, y) == ONE for y in ring.elements(F2U))
        assert ring.is_unit(x) == invertible


def test_element_ops_match_oracle():
    for x, y in itertools.product(range(4), range(4)):
        assert ring.add(x, y) == oracles.el_add(x, y)
        assert ring.mul(x, y) == oracles.el_mul(x, y)
        assert ring.mul(x, y) == ring.mul(y, x)
        assert ring.add(x, x) == 0


def test_gray_examples():
    # phi(a+bu) = (b, a+b), plane-major layout
    assert ring.gray(ring.parse_vector("u", F2U), 1) == 0b11
    assert ring.gray(ring.parse_vector("1", F2U), 1) == 0b10
    # (1+u, 0): b-plane (1,0), (a+b)-plane (0,0)
    v = ring.parse_vector("30", F2U)
    assert ring.gray(v, 2) == 0b0001
    assert oracles.gray_word([3, 0]) == (1, 0, 0, 0)


def test_gray_is_additive():
    rng = np.random.default_rng(5)
    n = 23
    for _ in range(50):
        v = (int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
        w = (int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
        assert ring.gray(ring.vec_add(v, w), n) == ring.gray(v, n) ^ ring.gray(w, n)


def test_gray_preserves_orthogonality():
    rng = np.random.default_rng(6)
    n = 17
    hits = 0
    for _ in range(400):
        v = (int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
        w = (int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
        if ring.vec_inner(v, w) != 0:
            continue
        hits += 1
        gv, gw = ring.gray(v, n), ring.gray(w, n)
        assert (gv & gw).bit_count() % 2 == 0
    assert hits > 20


def test_gray_weight_is_lee_weight():
    # units weigh 1, u weighs 2, 0 weighs 0
    lee = {ZERO: 0, ONE: 1, U: 2, ONE_PLUS_U: 1}
    for e, expected in lee.items():
        assert ring.gray(ring.vec_from_coords([e]), 1).bit_count() == expected


def test_vector_parsing_round_trip():
    text = "0u13u100"
    vec = ring.parse_vector(text, F2U)
    assert ring.vector_to_str(vec, len(text)) == text
    assert ring.vec_coords(vec, 8) == [0, 2, 1, 3, 2, 1, 0, 0]
    with pytest.raises(ValueError):
        ring.parse_vector("u", F2)
    with pytest.raises(ValueError):
        ring.parse_vector("2", F2U)


def test_vec_scale_and_inner():
    v = ring.parse_vector("1u30", F2U)
    assert ring.vector_to_str(ring.vec_scale(v, U), 4) == "u0u0"
    assert ring.vector_to_str(ring.vec_scale(v, ONE_PLUS_U), 4) == "3u10"
    # <v, v> = sum of squares = number of unit coordinates mod 2
    assert ring.vec_inner(v, v) == ZERO
    w = ring.parse_vector("1000", F2U)
    assert ring.vec_inner(ring.vec_add(v, w), w) == ZERO
