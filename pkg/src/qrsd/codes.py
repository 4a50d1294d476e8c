"""Linear codes over F2 and F2+uF2: duality, Gray images, weight data.

Generator rows are bit-plane packed (see `ring`).  Binary rank/standard
form use Gaussian elimination on Python ints with a deterministic
leftmost-pivot rule.  F2+uF2 codes are sized through their mod-u binary
reduction plus a freeness check on the additive span of {rows, u*rows}.

Partial weight distributions use the two-information-set method: for a
self-dual code the complement of an information set is again an
information set, and every codeword of weight w has weight <= floor(w/2)
on one of the two sides, so enumerating messages of weight <= w_max/2 on
both sides (de-duplicating by tail weight) yields exact counts A_w for
all w <= w_max.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ring
from .enumeration import (
    collect_affine_low_weight,
    count_low_weight,
    exists_weight_at_most,
    pack_tails,
)
from .ring import F2, F2U


class CodeFormatError(ValueError):
    """Raised for malformed code files; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Code:
    """A code given by a generator matrix of packed rows."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring_id: str, n: int, rows):
        ring.check_ring(ring_id)
        if n <= 0:
            raise ValueError("length must be positive")
        mask = (1 << n) - 1
        clean = []
        for a, b in rows:
            if (a | b) & ~mask:
                raise ValueError(f"row exceeds length {n}")
            if ring_id == F2 and b:
                raise ValueError("F2 rows must have an empty u-plane")
            clean.append((int(a), int(b)))
        self.ring = ring_id
        self.n = n
        self.rows = clean

    @property
    def k(self) -> int:
        return len(self.rows)

    def row_strings(self) -> list[str]:
        return [ring.vector_to_str(r, self.n) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Code)
            and (self.ring, self.n, self.rows) == (other.ring, other.n, other.rows)
        )

    def __repr__(self):
        return f"Code(ring={self.ring}, n={self.n}, k={self.k})"


def binary_code(n: int, rows_bits) -> Code:
    return Code(F2, n, [(r, 0) for r in rows_bits])


def echelon_binary(rows, n: int, col_order=None):
    """Reduced row echelon form over F2 with a fixed column scan order.

    Returns (nonzero reduced rows, pivot columns in scan order).  The
    pivot is always the first remaining row with the bit set, so forms
    are reproducible.
    """
    work = [int(r) for r in rows]
    if col_order is None:
        col_order = range(n)
    pivots = []
    top = 0
    for col in col_order:
        mask = 1 << col
        hit = -1
        for r in range(top, len(work)):
            if work[r] & mask:
                hit = r
                break
        if hit < 0:
            continue
        work[top], work[hit] = work[hit], work[top]
        pv = work[top]
        for r in range(len(work)):
            if r != top and work[r] & mask:
                work[r] ^= pv
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank_and_pivots(code: Code):
    """(rank, pivots, free): binary rank and pivot columns.

    For F2+uF2 the rank is that of the mod-u reduction and `free` tells
    whether the row span is a free module of that rank (the additive
    span of {rows, u*rows} must have binary rank exactly 2*rank).
    """
    a_planes = [a for a, _ in code.rows]
    _, pivots = echelon_binary(a_planes, code.n)
    r = len(pivots)
    if code.ring == F2:
        return r, tuple(pivots), True
    stacked = [a | (b << code.n) for a, b in code.rows]
    stacked += [a << code.n for a, _ in code.rows]
    _, piv2 = echelon_binary(stacked, 2 * code.n)
    return r, tuple(pivots), len(piv2) == 2 * r


def self_dual_failure(code: Code) -> str | None:
    """None if the code is self-dual, else a human-readable reason."""
    if code.n % 2:
        return f"length {code.n} is odd"
    for i in range(code.k):
        for j in range(i, code.k):
            if ring.vec_inner(code.rows[i], code.rows[j]):
                return f"generator rows {i} and {j} are not orthogonal"
    rank, _, free = rank_and_pivots(code)
    if rank != code.n // 2:
        return f"rank {rank} is not n/2 = {code.n // 2}"
    if not free:
        return "row span is not a free module of rank n/2"
    return None


def is_self_dual(code: Code) -> bool:
    return self_dual_failure(code) is None


def is_self_orthogonal(code: Code) -> bool:
    return all(
        ring.vec_inner(code.rows[i], code.rows[j]) == 0
        for i in range(code.k)
        for j in range(i, code.k)
    )


def is_doubly_even(code: Code) -> bool:
    """Whether all weights are 0 mod 4 (Type II for self-dual codes).

    Row weights 0 mod 4 suffice for a self-orthogonal binary code.
    """
    if code.ring != F2:
        raise ValueError("doubly-even is a binary notion")
    if not is_self_orthogonal(code):
        raise ValueError("code is not self-orthogonal")
    return all(a.bit_count() % 4 == 0 for a, _ in code.rows)


def extremal_bound(n: int, code_type: str = "I") -> int:
    """Largest possible minimum distance of a self-dual code of length n."""
    if code_type not in ("I", "II"):
        raise ValueError("type must be 'I' or 'II'")
    if code_type == "II":
        return 4 * (n // 24) + 4
    if n % 24 == 22:
        return 4 * (n // 24) + 6
    return 4 * (n // 24) + 4


def gray_image(code: Code) -> Code:
    """Binary image of an F2+uF2 code under the coordinate-wise Gray map.

    Generated by the images of the rows and of u*rows, which together
    span the image of the whole module.
    """
    if code.ring != F2U:
        raise ValueError("Gray image needs an F2+uF2 code")
    n = code.n
    rows = [(ring.gray(r, n), 0) for r in code.rows]
    rows += [(a | (a << n), 0) for a, _ in code.rows]  # gray(u * row)
    return Code(F2, 2 * n, rows)


@dataclass
class WeightReport:
    """Partial weight data: A_w for 0 < w <= w_max plus classification."""

    n: int
    w_max: int
    counts: dict[int, int]
    d: int | None
    family: str | None = None
    beta: int | None = None
    gamma: int | None = None
    warnings: tuple[str, ...] = ()

    def count(self, w: int) -> int:
        return self.counts.get(w, 0)


def _tail_bits(rows, cols) -> list[int]:
    out = []
    for bits in rows:
        tail = 0
        for idx, c in enumerate(cols):
            tail |= ((bits >> c) & 1) << idx
        out.append(tail)
    return out


def _systematic_sides(code: Code):
    """Systematic data for the pivot information set and its complement.

    Returns (reduced_a, pivots, others, tails_a, reduced_b, tails_b).
    """
    if code.ring != F2:
        raise ValueError("weight enumeration operates on binary codes")
    n, k = code.n, code.k
    rows = [a for a, _ in code.rows]
    reduced, pivots = echelon_binary(rows, n)
    if len(pivots) != k:
        raise ValueError("generator matrix is not full rank")
    pivot_set = set(pivots)
    others = [c for c in range(n) if c not in pivot_set]
    reduced_b, pivots_b = echelon_binary(rows, n, col_order=others + pivots)
    if set(pivots_b) != set(others):
        raise ValueError("complement of the information set is not an information set")
    tails_a = pack_tails(_tail_bits(reduced, others), len(others))
    tails_b = pack_tails(_tail_bits(reduced_b, pivots), len(pivots))
    return reduced, pivots, others, tails_a, reduced_b, tails_b


def _two_sided_tails(code: Code):
    """Tail matrices for the pivot information set and its complement."""
    data = _systematic_sides(code)
    return data[3], data[5]


def partial_weights(
    code: Code,
    w_max: int,
    threads: int = 1,
    backend: str | None = None,
) -> WeightReport:
    """Exact A_w for all 0 < w <= w_max of a binary self-dual code.

    Enumerates messages of weight <= floor(w_max/2) on the pivot
    information set and on its complement; the second pass keeps only
    codewords whose pivot-side weight exceeds the threshold, so nothing
    is counted twice.  Certifies d when d <= w_max.
    """
    n = code.n
    w_max = min(w_max, n)
    tails_a, tails_b = _two_sided_tails(code)
    t = w_max // 2
    counts = count_low_weight(tails_a, t, w_max, 0, threads, backend)
    counts += count_low_weight(tails_b, t, w_max, t + 1, threads, backend)

    count_map = {w: int(counts[w]) for w in range(1, w_max + 1)}
    d = next((w for w in range(1, w_max + 1) if count_map[w]), None)
    return WeightReport(n=n, w_max=w_max, counts=count_map, d=d)


def coset_low_weight_words(
    code: Code,
    rep: int,
    w_max: int,
    backend: str | None = None,
) -> list[int]:
    """All words of weight <= w_max in the coset rep + C (exact).

    Same two-information-set coverage argument as partial_weights, with
    the enumeration offset by the unique coset word vanishing on the
    respective information set.
    """
    reduced, pivots, others, tails_a, reduced_b, tails_b = _systematic_sides(code)
    words: set[int] = set()
    for basis, cols, tails in (
        (reduced, pivots, tails_a),
        (reduced_b, others, tails_b),
    ):
        offset_word = rep
        for i, col in enumerate(cols):
            if (offset_word >> col) & 1:
                offset_word ^= basis[i]
        offset_tail = pack_tails(_tail_bits([offset_word], [c for c in range(code.n) if c not in set(cols)]), code.n - len(cols))[0]
        msgs, _ = collect_affine_low_weight(tails, offset_tail, w_max // 2, w_max, backend=backend)
        for msg in msgs:
            word = offset_word
            m = int(msg)
            while m:
                low = m & -m
                word ^= basis[low.bit_length() - 1]
                m ^= low
            words.add(word)
    return sorted(words)


def has_word_of_weight_at_most(
    code: Code,
    w_max: int,
    backend: str | None = None,
) -> bool:
    """Early-exit screen: does any nonzero codeword of weight <= w_max
    exist?  Both sides are enumerated to floor(w_max/2), which covers
    every weight up to 2*floor(w_max/2) + 1 >= w_max."""
    tails_a, tails_b = _two_sided_tails(code)
    t = w_max // 2
    if exists_weight_at_most(tails_a, t, w_max, backend):
        return True
    return exists_weight_at_most(tails_b, t, w_max, backend)


@dataclass(frozen=True)
class EnumeratorMatch:
    family: str
    beta: int | None
    gamma: int | None
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class _Family:
    name: str
    a12_const: int
    a12_beta: int
    a14_const: int
    a14_beta: int
    a14_gamma: int = 0
    beta_range: tuple[int, int] | None = None
    gamma_range: tuple[int, int] | None = None


# A_12 and A_14 of the possible weight enumerators of extremal singly
# even self-dual codes at the lengths this construction reaches.
_FAMILIES: dict[int, tuple[_Family, ...]] = {
    60: (
        _Family("W60,1", 3451, 0, 24128, 0),
        _Family("W60,2", 2555, 64, 33600, -384, beta_range=(0, 10)),
    ),
    64: (
        _Family("W64,1", 1312, 16, 22016, -64, beta_range=(14, 284)),
        _Family("W64,2", 1312, 16, 23040, -64, beta_range=(0, 277)),
    ),
    66: (
        _Family("W66,1", 858, 8, 18678, -24, beta_range=(0, 778)),
        _Family("W66,2", 1690, 0, 7990, 0),
        _Family("W66,3", 858, 8, 18166, -24, beta_range=(14, 756)),
    ),
    68: (
        _Family("W68,1", 442, 4, 10864, -8),
        _Family("W68,2", 442, 4, 14960, -8, a14_gamma=-256, gamma_range=(0, 9)),
    ),
}


def classify_enumerator(n: int, a12: int, a14: int) -> list[EnumeratorMatch]:
    """All (family, beta[, gamma]) consistent with exact A_12 and A_14."""
    matches = []
    for fam in _FAMILIES.get(n, ()):
        beta = gamma = None
        if fam.a12_beta:
            q, r = divmod(a12 - fam.a12_const, fam.a12_beta)
            if r:
                continue
            beta = q
            rest = a14 - fam.a14_const - fam.a14_beta * beta
        else:
            if a12 != fam.a12_const:
                continue
            rest = a14 - fam.a14_const
        if fam.a14_gamma:
            q, r = divmod(rest, fam.a14_gamma)
            if r:
                continue
            gamma = q
        elif rest != 0:
            continue
        warnings = []
        if fam.beta_range and beta is not None:
            lo, hi = fam.beta_range
            if not lo <= beta <= hi:
                warnings.append(f"beta={beta} outside published range [{lo}, {hi}]")
        if fam.gamma_range and gamma is not None:
            lo, hi = fam.gamma_range
            if not lo <= gamma <= hi:
                warnings.append(f"gamma={gamma} outside published range [{lo}, {hi}]")
        matches.append(EnumeratorMatch(fam.name, beta, gamma, tuple(warnings)))
    return matches


def classified_report(
    code: Code,
    w_max: int = 14,
    threads: int = 1,
    backend: str | None = None,
) -> WeightReport:
    """partial_weights plus enumerator-family identification (when unique).

    Families are only meaningful for extremal d = 12 codes, so
    classification is skipped unless the certified d is exactly 12.
    """
    report = partial_weights(code, w_max, threads=threads, backend=backend)
    if w_max >= 14 and report.d == 12:
        matches = classify_enumerator(code.n, report.count(12), report.count(14))
        clean = [m for m in matches if not m.warnings] or matches
        if clean:
            best = clean[0]
            report.family = best.family
            report.beta = best.beta
            report.gamma = best.gamma
            report.warnings = best.warnings
            if len(matches) > 1:
                report.warnings += (
                    "ambiguous: also matches "
                    + ", ".join(m.family for m in matches if m is not best),
                )
    return report


def format_code(code: Code) -> str:
    lines = [f"ring={code.ring} n={code.n} k={code.k}"]
    lines += code.row_strings()
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    lines = text.splitlines()
    if not lines:
        raise CodeFormatError(1, "empty file")
    header = lines[0].split()
    fields = {}
    for part in header:
        if "=" not in part:
            raise CodeFormatError(1, f"bad header field {part!r}")
        key, value = part.split("=", 1)
        fields[key] = value
    try:
        ring_id = fields["ring"]
        n = int(fields["n"])
        k = int(fields["k"])
    except (KeyError, ValueError) as exc:
        raise CodeFormatError(1, f"header must give ring=, n=, k= ({exc})") from exc
    ring.check_ring(ring_id)
    rows = []
    body = [(i + 2, ln.strip()) for i, ln in enumerate(lines[1:]) if ln.strip()]
    if len(body) != k:
        raise CodeFormatError(len(lines), f"expected {k} rows, found {len(body)}")
    for lineno, ln in body:
        if len(ln) != n:
            raise CodeFormatError(lineno, f"row has {len(ln)} symbols, expected {n}")
        try:
            rows.append(ring.parse_vector(ln, ring_id))
        except ValueError as exc:
            raise CodeFormatError(lineno, str(exc)) from exc
    return Code(ring_id, n, rows)


def read_code(path) -> Code:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def write_code(code: Code, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(code))
