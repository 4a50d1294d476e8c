"""Length-two extensions and neighbour constructions for self-dual codes.

Extension: given a self-dual code with generator rows r_i, a vector X
with <X, X> = 1 and a unit c with c*c = 1, the rows (1, 0 | X) and
(y_i, c*y_i | r_i) with y_i = <r_i, X> generate a self-dual code two
coordinates longer.  Over F2 the only choice is c = 1; over F2+uF2 both
units square to 1.

Neighbour: for a binary self-dual C and an even-weight x outside C, the
code <x>^perp intersect C, extended by x, is self-dual and meets C in
codimension 1.  Chains iterate this step.
"""

from __future__ import annotations

from . import ring
from .codes import Code, is_self_dual, self_dual_failure
from .ring import F2, Vec


def extend(code: Code, x: Vec, c: int = 1) -> Code:
    """Two-coordinate extension by the vector x and unit c."""
    if c not in ring.units(code.ring) or ring.mul(c, c) != 1:
        raise ValueError(f"c must be a unit with c*c = 1, got {c}")
    if ring.vec_inner(x, x) != 1:
        raise ValueError("extension vector must satisfy <X, X> = 1")
    failure = self_dual_failure(code)
    if failure is not None:
        raise ValueError(f"extension base is not self-dual: {failure}")
    xa, xb = x
    rows = [(1 | (xa << 2), xb << 2)]
    for a, b in code.rows:
        y = ring.vec_inner((a, b), x)
        cy = ring.mul(c, y)
        rows.append(
            (
                (y & 1) | ((cy & 1) << 1) | (a << 2),
                (y >> 1) | ((cy >> 1) << 1) | (b << 2),
            )
        )
    out = Code(code.ring, code.n + 2, rows)
    failure = self_dual_failure(out)
    if failure is not None:
        raise ValueError(f"extension output is not self-dual: {failure}")
    return out


def neighbour(code: Code, x: int) -> tuple[Code, bool]:
    """The neighbour of a binary self-dual code through x.

    Returns (code', degenerate); degenerate means x was already a
    codeword, in which case the input code is returned unchanged.
    """
    if code.ring != F2:
        raise ValueError("neighbours are defined for binary codes")
    if x.bit_count() % 2:
        raise ValueError("neighbour vector must have even weight")
    if x >> code.n:
        raise ValueError(f"vector exceeds length {code.n}")
    failure = self_dual_failure(code)
    if failure is not None:
        raise ValueError(f"neighbour base is not self-dual: {failure}")
    syndromes = [(a & x).bit_count() & 1 for a, _ in code.rows]
    if not any(syndromes):
        # x lies in C^perp = C
        return code, True
    pivot = syndromes.index(1)
    pivot_row = code.rows[pivot][0]
    rows = [
        (a ^ pivot_row if s else a, 0)
        for (a, _), s in zip(code.rows, syndromes)
    ]
    del rows[pivot]
    rows.append((x, 0))
    return Code(F2, code.n, rows), False


def neighbour_chain(code: Code, xs) -> list[Code]:
    """Successive neighbours through the listed vectors.

    Every x_i must lie outside the current code; a degenerate step is an
    error and reports its chain index.
    """
    out = []
    current = code
    for i, x in enumerate(xs):
        current, degenerate = neighbour(current, x)
        if degenerate:
            raise ValueError(f"chain step {i}: vector already lies in the code")
        out.append(current)
    return out


def place_high_bits(bits: str, n: int) -> int:
    """Pack a 0/1 string into the top coordinates of a length-n vector.

    A string of m bits occupies coordinates n-m+1 .. n (1-based), the
    convention used by the published extension and neighbour vectors;
    the low coordinates are zero.
    """
    m = len(bits)
    if m > n:
        raise ValueError(f"{m} bits do not fit in length {n}")
    value, _ = ring.parse_vector(bits, F2)
    return value << (n - m)
