"""Exact arithmetic for F2 and F2+uF2 with bit-plane packed vectors.

A ring element is an int 0..3 encoding a + b*u (u*u = 0): bit 0 holds a,
bit 1 holds b, so 0 -> 0, 1 -> 1, 2 -> u, 3 -> 1+u.  F2 uses the subset
{0, 1}.  A vector is a pair of Python ints (a_plane, b_plane) with bit i
of each plane holding coordinate i; the b-plane of an F2 vector is always
zero.  All vector operations are word-parallel XOR/AND on the planes.

Text I/O uses the alphabet 0, 1, u, 3 where "3" abbreviates 1+u.
"""

from __future__ import annotations

F2 = "F2"
F2U = "F2U"
RINGS = (F2, F2U)

ZERO, ONE, U, ONE_PLUS_U = 0, 1, 2, 3

_CHARS = "01u3"

Vec = tuple[int, int]


def check_ring(ring: str) -> None:
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")


def elements(ring: str) -> tuple[int, ...]:
    """All ring elements as packed ints."""
    check_ring(ring)
    return (0, 1) if ring == F2 else (0, 1, 2, 3)


def units(ring: str) -> tuple[int, ...]:
    """The invertible elements: 1 over F2, 1 and 1+u over F2+uF2."""
    check_ring(ring)
    return (1,) if ring == F2 else (1, 3)


def add(x: int, y: int) -> int:
    """Ring sum; characteristic 2 makes this plane-wise XOR."""
    return x ^ y


def mul(x: int, y: int) -> int:
    """Ring product (a+bu)(c+du) = ac + (ad+bc)u, using u*u = 0."""
    a = x & y & 1
    b = ((x & (y >> 1)) ^ ((x >> 1) & y)) & 1
    return a | (b << 1)


def is_unit(x: int) -> bool:
    """True iff x is invertible; equivalently its 1-coefficient is set."""
    return x & 1 == 1


def element_from_char(ch: str, ring: str) -> int:
    check_ring(ring)
    idx = _CHARS.find(ch)
    if idx < 0 or (ring == F2 and idx > 1):
        raise ValueError(f"invalid {ring} element {ch!r}")
    return idx


def element_to_char(x: int) -> str:
    return _CHARS[x]


def parse_vector(text: str, ring: str) -> Vec:
    """Parse a vector string; character i becomes coordinate i."""
    a = b = 0
    for i, ch in enumerate(text):
        e = element_from_char(ch, ring)
        a |= (e & 1) << i
        b |= (e >> 1) << i
    return a, b


def vector_to_str(vec: Vec, n: int) -> str:
    a, b = vec
    return "".join(_CHARS[((a >> i) & 1) | (((b >> i) & 1) << 1)] for i in range(n))


def vec_coord(vec: Vec, i: int) -> int:
    a, b = vec
    return ((a >> i) & 1) | (((b >> i) & 1) << 1)


def vec_coords(vec: Vec, n: int) -> list[int]:
    return [vec_coord(vec, i) for i in range(n)]


def vec_from_coords(coords) -> Vec:
    a = b = 0
    for i, e in enumerate(coords):
        a |= (e & 1) << i
        b |= ((e >> 1) & 1) << i
    return a, b


def vec_add(v: Vec, w: Vec) -> Vec:
    return v[0] ^ w[0], v[1] ^ w[1]


def vec_scale(v: Vec, e: int) -> Vec:
    """Coordinate-wise product with the scalar e = ea + eb*u."""
    a, b = v
    na = a if e & 1 else 0
    nb = (a if e & 2 else 0) ^ (b if e & 1 else 0)
    return na, nb


def vec_inner(v: Vec, w: Vec) -> int:
    """Euclidean inner product, as a ring element."""
    a = (v[0] & w[0]).bit_count() & 1
    b = ((v[0] & w[1]).bit_count() ^ (v[1] & w[0]).bit_count()) & 1
    return a | (b << 1)


def vec_support(vec: Vec) -> int:
    """Bit mask of the nonzero coordinates."""
    return vec[0] | vec[1]


def gray(vec: Vec, n: int) -> int:
    """Map a length-n F2+uF2 vector to packed binary of length 2n.

    Coordinate-wise a+bu -> (b, a+b), laid out plane-major: the n
    b-coordinates first, then the n (a+b)-coordinates.  Additive, and
    weight-preserving for the Lee weight.
    """
    a, b = vec
    return b | ((a ^ b) << n)
