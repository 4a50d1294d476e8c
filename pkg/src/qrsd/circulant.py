"""Circulant and quadratic-residue circulant matrices over F2 / F2+uF2.

A p x p circulant is stored as its packed first row; row i is the cyclic
right shift of the first row by i.  Products are length-p cyclic
convolutions of first rows, done plane-wise with shift/XOR (p <= 13 in
every construction here, so nothing fancier is warranted).

Q_p(a, b, c) places a at position 0, b at the nonzero quadratic residues
mod p and c at the non-residues.  Products of two such matrices (one of
them transposed) collapse to a closed-form Q_p triple; `qr_product`
implements that closed form, with the 4k+1 / 4k+3 split and k entering
only through k mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ring
from .ring import Vec


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def quadratic_residues(p: int) -> frozenset[int]:
    """The (p-1)/2 nonzero quadratic residues mod an odd prime p."""
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return frozenset((i * i) % p for i in range(1, p))


def _rotl(bits: int, s: int, p: int) -> int:
    """Cyclic left rotate of a p-bit plane (coordinate j -> j+s mod p)."""
    s %= p
    mask = (1 << p) - 1
    return ((bits << s) | (bits >> (p - s))) & mask


def _reverse_tail(bits: int, p: int) -> int:
    """Transpose of a circulant first row: keep bit 0, reverse bits 1..p-1."""
    out = bits & 1
    for i in range(1, p):
        out |= ((bits >> i) & 1) << (p - i)
    return out


@dataclass(frozen=True)
class Circulant:
    """A p x p circulant matrix over a ring, stored as its first row."""

    p: int
    ring: str
    row: Vec

    def coords(self) -> list[int]:
        return ring.vec_coords(self.row, self.p)

    def is_zero(self) -> bool:
        return self.row == (0, 0)


def circulant_from_coords(p: int, ring_id: str, coords) -> Circulant:
    ring.check_ring(ring_id)
    if len(coords) != p:
        raise ValueError(f"first row has {len(coords)} entries, expected {p}")
    return Circulant(p, ring_id, ring.vec_from_coords(coords))


def identity(p: int, ring_id: str) -> Circulant:
    return Circulant(p, ring_id, (1, 0))


def _check_compatible(x: Circulant, y: Circulant) -> None:
    if x.p != y.p or x.ring != y.ring:
        raise ValueError(
            f"circulant mismatch: ({x.p}, {x.ring}) vs ({y.p}, {y.ring})"
        )


def circ_add(x: Circulant, y: Circulant) -> Circulant:
    _check_compatible(x, y)
    return Circulant(x.p, x.ring, ring.vec_add(x.row, y.row))


def _conv2(x: int, y: int, p: int) -> int:
    """Cyclic convolution of two F2 planes of length p."""
    acc = 0
    while x:
        low = x & -x
        acc ^= _rotl(y, low.bit_length() - 1, p)
        x ^= low
    return acc


def circ_mul(x: Circulant, y: Circulant) -> Circulant:
    """Product of circulants: cyclic convolution of first rows."""
    _check_compatible(x, y)
    p = x.p
    xa, xb = x.row
    ya, yb = y.row
    a = _conv2(xa, ya, p)
    if x.ring == ring.F2:
        return Circulant(p, x.ring, (a, 0))
    b = _conv2(xa, yb, p) ^ _conv2(xb, ya, p)
    return Circulant(p, x.ring, (a, b))


def circ_transpose(x: Circulant) -> Circulant:
    a, b = x.row
    return Circulant(x.p, x.ring, (_reverse_tail(a, x.p), _reverse_tail(b, x.p)))


@dataclass(frozen=True)
class QRSpec:
    """The data (p; a, b, c) defining Q_p(a, b, c) over a ring."""

    p: int
    ring: str
    a: int
    b: int
    c: int

    def __post_init__(self):
        ring.check_ring(self.ring)
        if not is_odd_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")
        for e in (self.a, self.b, self.c):
            if e not in ring.elements(self.ring):
                raise ValueError(f"element {e} not in {self.ring}")

    @property
    def k(self) -> int:
        """The k of p = 4k+1 or p = 4k+3."""
        return self.p // 4

    @property
    def residue_class(self) -> int:
        return self.p % 4

    def triple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


def expand(spec: QRSpec) -> Circulant:
    """The circulant whose first row follows the residue placement rule."""
    residues = quadratic_residues(spec.p)
    coords = [spec.a]
    for i in range(1, spec.p):
        coords.append(spec.b if i in residues else spec.c)
    return circulant_from_coords(spec.p, spec.ring, coords)


def qr_add(x: QRSpec, y: QRSpec) -> QRSpec:
    if x.p != y.p or x.ring != y.ring:
        raise ValueError("QR spec mismatch")
    return QRSpec(x.p, x.ring, x.a ^ y.a, x.b ^ y.b, x.c ^ y.c)


def qr_product(i: QRSpec, j: QRSpec) -> QRSpec:
    """Closed form for Q_p(a_i,b_i,c_i) * Q_p(a_j,b_j,c_j)^T.

    Characteristic 2 reduces every integer coefficient mod 2, so only
    k mod 2 matters.
    """
    if i.p != j.p or i.ring != j.ring:
        raise ValueError("QR spec mismatch")
    k1 = i.k & 1
    k0 = k1 ^ 1  # (k+1) mod 2
    m = ring.mul

    def scaled(bit: int, e: int) -> int:
        return e if bit else 0

    aa = m(i.a, j.a)
    ab, ba = m(i.a, j.b), m(i.b, j.a)
    ac, ca = m(i.a, j.c), m(i.c, j.a)
    bb, cc = m(i.b, j.b), m(i.c, j.c)
    bc, cb = m(i.b, j.c), m(i.c, j.b)

    if i.residue_class == 1:
        alpha = aa
        beta = ab ^ ba ^ scaled(k0, bb) ^ scaled(k1, bc ^ cb) ^ scaled(k1, cc)
        gamma = ac ^ ca ^ scaled(k1, bb) ^ scaled(k1, bc ^ cb) ^ scaled(k0, cc)
    else:
        alpha = aa ^ bb ^ cc
        beta = ac ^ ba ^ scaled(k1, bb ^ cc) ^ scaled(k1, bc) ^ scaled(k0, cb)
        gamma = ab ^ ca ^ scaled(k1, bb ^ cc) ^ scaled(k0, bc) ^ scaled(k1, cb)
    return QRSpec(i.p, i.ring, alpha, beta, gamma)


def gf2_poly_gcd(a: int, b: int) -> int:
    """GCD of two F2[x] polynomials encoded as ints (bit i = x^i)."""
    while b:
        while a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
            if a == 0:
                break
        a, b = b, a
    return a


def circulant_invertible(x: Circulant) -> bool:
    """Whether the circulant is invertible over its ring.

    Over F2 the representer polynomial must be coprime to x^p - 1; over
    F2+uF2 invertibility of the mod-u reduction suffices because u is
    nilpotent.
    """
    f = x.row[0]
    if f == 0:
        return False
    modulus = (1 << x.p) | 1  # x^p + 1 over F2
    return gf2_poly_gcd(modulus, f) == 1
