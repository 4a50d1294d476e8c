"""The 3x3 block generator built from QR circulants and plain circulants.

The generator is M = (L | R) where L and R are 3x3 block circulants: the
block at block-row r, block-column c is Q_{(c-r) mod 3} on the left and
A_{(c-r) mod 3} on the right, with Q_i = Q_p(a_i, b_i, c_i) and A_i a
p x p circulant.  M M^T is again a 3x3 block circulant whose first
block row is (D0, D1, D1^T); the code is self-orthogonal iff D0 = D1 = 0,
which splits into "sum of A_i A_i^T matches the closed-form QR sum" and
the same for the cross terms.  Those two closed-form conditions are what
`self_orthogonality_conditions` evaluates; `gram_blocks` computes
D0, D1 directly by circulant convolution as an independent route.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import ring
from .circulant import (
    Circulant,
    QRSpec,
    circ_add,
    circ_mul,
    circ_transpose,
    circulant_invertible,
    expand,
    is_odd_prime,
    qr_add,
    qr_product,
)
from .codes import Code
from .ring import Vec


@dataclass(frozen=True)
class ConstructionSpec:
    """p, ring, three QR coefficient triples and three circulant rows."""

    p: int
    ring: str
    q_triples: tuple[tuple[int, int, int], ...]
    a_rows: tuple[Vec, ...]

    def __post_init__(self):
        ring.check_ring(self.ring)
        if not is_odd_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")
        if len(self.q_triples) != 3 or len(self.a_rows) != 3:
            raise ValueError("need exactly three QR triples and three A rows")
        elems = ring.elements(self.ring)
        for triple in self.q_triples:
            if len(triple) != 3 or any(e not in elems for e in triple):
                raise ValueError(f"bad QR triple {triple!r}")
        mask = (1 << self.p) - 1
        for a, b in self.a_rows:
            if (a | b) & ~mask or (self.ring == ring.F2 and b):
                raise ValueError("bad circulant row")

    def qr_specs(self) -> tuple[QRSpec, QRSpec, QRSpec]:
        return tuple(
            QRSpec(self.p, self.ring, *triple) for triple in self.q_triples
        )

    def a_circulants(self) -> tuple[Circulant, Circulant, Circulant]:
        return tuple(Circulant(self.p, self.ring, row) for row in self.a_rows)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "ring": self.ring,
            "q_triples": [
                "".join(ring.element_to_char(e) for e in triple)
                for triple in self.q_triples
            ],
            "a_rows": [ring.vector_to_str(row, self.p) for row in self.a_rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConstructionSpec":
        ring_id = data["ring"]
        triples = tuple(
            tuple(ring.element_from_char(ch, ring_id) for ch in word)
            for word in data["q_triples"]
        )
        rows = tuple(ring.parse_vector(word, ring_id) for word in data["a_rows"])
        return cls(int(data["p"]), ring_id, triples, rows)

    @classmethod
    def from_json(cls, text: str) -> "ConstructionSpec":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _rot_vec(row: Vec, s: int, p: int) -> Vec:
    s %= p
    mask = (1 << p) - 1
    a, b = row
    return (
        ((a << s) | (a >> (p - s))) & mask,
        ((b << s) | (b >> (p - s))) & mask,
    )


def build(spec: ConstructionSpec) -> Code:
    """The 3p x 6p generator; block (r, c) holds Q/A with index (c-r) mod 3."""
    p = spec.p
    q_rows = [expand(q).row for q in spec.qr_specs()]
    a_rows = list(spec.a_rows)
    rows = []
    for r in range(3):
        for t in range(p):
            acc_a = acc_b = 0
            for c in range(3):
                idx = (c - r) % 3
                qa, qb = _rot_vec(q_rows[idx], t, p)
                aa, ab = _rot_vec(a_rows[idx], t, p)
                acc_a |= (qa << (c * p)) | (aa << ((3 + c) * p))
                acc_b |= (qb << (c * p)) | (ab << ((3 + c) * p))
            rows.append((acc_a, acc_b))
    return Code(spec.ring, 6 * p, rows)


def gram_blocks(spec: ConstructionSpec) -> tuple[Circulant, Circulant, Circulant]:
    """The three distinct circulant blocks (D0, D1, D1^T) of M M^T."""
    qs = [expand(q) for q in spec.qr_specs()]
    avs = list(spec.a_circulants())
    qs_t = [circ_transpose(q) for q in qs]
    avs_t = [circ_transpose(a) for a in avs]
    d0 = Circulant(spec.p, spec.ring, (0, 0))
    d1 = Circulant(spec.p, spec.ring, (0, 0))
    for i in range(3):
        j = (i + 2) % 3
        d0 = circ_add(d0, circ_mul(qs[i], qs_t[i]))
        d0 = circ_add(d0, circ_mul(avs[i], avs_t[i]))
        d1 = circ_add(d1, circ_mul(qs[i], qs_t[j]))
        d1 = circ_add(d1, circ_mul(avs[i], avs_t[j]))
    return d0, d1, circ_transpose(d1)


def self_orthogonality_conditions(spec: ConstructionSpec) -> bool:
    """Closed-form criterion for M M^T = 0.

    Condition 1: sum A_i A_i^T equals the closed-form QR triple for
    sum Q_i Q_i^T; condition 2: the same for the (i, i+2) cross sums.
    """
    qspecs = spec.qr_specs()
    avs = spec.a_circulants()
    avs_t = [circ_transpose(a) for a in avs]

    q_diag = qr_product(qspecs[0], qspecs[0])
    a_diag = circ_mul(avs[0], avs_t[0])
    q_cross = qr_product(qspecs[0], qspecs[2])
    a_cross = circ_mul(avs[0], avs_t[2])
    for i in (1, 2):
        j = (i + 2) % 3
        q_diag = qr_add(q_diag, qr_product(qspecs[i], qspecs[i]))
        a_diag = circ_add(a_diag, circ_mul(avs[i], avs_t[i]))
        q_cross = qr_add(q_cross, qr_product(qspecs[i], qspecs[j]))
        a_cross = circ_add(a_cross, circ_mul(avs[i], avs_t[j]))
    return expand(q_diag) == a_diag and expand(q_cross) == a_cross


def qr_sum_invertible(spec: ConstructionSpec) -> bool:
    """Whether Q_0 + Q_1 + Q_2 is invertible over the ring."""
    total = spec.qr_specs()[0]
    for q in spec.qr_specs()[1:]:
        total = qr_add(total, q)
    return circulant_invertible(expand(total))
