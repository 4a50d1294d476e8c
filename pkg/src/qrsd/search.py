"""Seeded random search and reproduction of the published code tables.

Search phases:
  construct        random block-construction specs, filtered through the
                   closed-form self-orthogonality conditions;
  extend           random <X, X> = 1 extension vectors over a base code;
  neighbour-chain  random even-weight vectors outside the current code.

Every trial draws from its own PCG64 stream (seed XOR trial index), so
results are identical regardless of worker count or execution order.
Emitted discoveries are verified self-dual codes with a certified
minimum distance and an identified weight-enumerator family; novelty is
judged against the bundled lists of previously known (family, beta
[, gamma]) parameters.

`reproduce_tables` rebuilds every published table row from the bundled
data files and verifies (d, family, beta, gamma) plus the novelty flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import ring
from .codes import (
    Code,
    WeightReport,
    classified_report,
    coset_low_weight_words,
    extremal_bound,
    gray_image,
    is_doubly_even,
    is_self_dual,
    read_code,
    self_dual_failure,
)
from .construction import ConstructionSpec, build, self_orthogonality_conditions
from .ring import F2, F2U
from .transforms import extend, neighbour, place_high_bits

SCHEMA = "qrsd-discovery/1"

_DATA_PACKAGE = "qrsd"
_DATA_DIR = "paper-data"


def _load_data(name: str) -> dict:
    path = resources.files(_DATA_PACKAGE) / _DATA_DIR / name
    return json.loads(path.read_text(encoding="utf-8"))


def load_table(i: int) -> dict:
    return _load_data(f"table{i}.json")


def known_parameters() -> dict:
    return _load_data("known_enumerators.json")


def is_known(family: str, beta: int | None, gamma: int | None) -> bool:
    """Whether (family, beta[, gamma]) appears in the published lists."""
    data = known_parameters()
    entry = data.get(family)
    if entry is None:
        return False
    if "by_gamma" in entry:
        betas = entry["by_gamma"].get(str(gamma), [])
        return beta in betas
    if "beta" in entry:
        return beta in entry["beta"]
    return True  # family with a fixed enumerator, known to exist


@dataclass
class Discovery:
    n: int
    ring: str
    d: int
    family: str
    beta: int | None
    gamma: int | None
    novel: bool
    seed: int
    trial: int
    generator: list[str]
    provenance: dict
    duplicate_of: int | None = None

    def key(self):
        return (self.n, self.d, self.family, self.beta, self.gamma)

    def to_record(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "ring": self.ring,
            "d": self.d,
            "family": self.family,
            "beta": self.beta,
            "gamma": self.gamma,
            "novel": self.novel,
            "duplicate_of": self.duplicate_of,
            "seed": self.seed,
            "trial": self.trial,
            "generator": self.generator,
            "provenance": self.provenance,
        }


@dataclass
class SearchConfig:
    phase: str
    seed: int = 0
    max_trials: int = 1000
    p: int | None = None
    ring: str | None = None
    target_length: int | None = None
    w_max: int = 14
    base: object = None  # path or Code, for extend / neighbour-chain
    chain_length: int = 1
    threads: int = 1
    backend: str | None = None
    seed_specs: tuple = ()

    def __post_init__(self):
        if self.phase not in ("construct", "extend", "neighbour-chain"):
            raise ValueError(f"unknown search phase {self.phase!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "SearchConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}
        kwargs = {k: v for k, v in data.items() if k in known}
        specs = kwargs.pop("seed_specs", ())
        cfg = cls(**kwargs)
        cfg.seed_specs = tuple(
            s if isinstance(s, ConstructionSpec) else ConstructionSpec.from_dict(s)
            for s in specs
        )
        return cfg


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # one fixed, portable stream per trial: results do not depend on
    # how trials are scheduled across workers
    return np.random.Generator(np.random.PCG64(seed ^ trial))


def _random_vector(rng, n: int, ring_id: str):
    elems = ring.elements(ring_id)
    coords = rng.integers(0, len(elems), size=n)
    return ring.vec_from_coords([elems[int(c)] for c in coords])


def _random_spec(rng, p: int, ring_id: str) -> ConstructionSpec:
    triples = tuple(
        tuple(int(e) for e in rng.integers(0, len(ring.elements(ring_id)), size=3))
        for _ in range(3)
    )
    rows = tuple(_random_vector(rng, p, ring_id) for _ in range(3))
    return ConstructionSpec(p, ring_id, triples, rows)


def _binary_view(code: Code) -> Code:
    return gray_image(code) if code.ring == F2U else code


def _classify_or_none(code: Code, cfg: SearchConfig) -> WeightReport | None:
    report = classified_report(code, cfg.w_max, threads=cfg.threads, backend=cfg.backend)
    if report.d is None or report.family is None:
        return None
    return report


def _load_base(cfg: SearchConfig) -> Code:
    if isinstance(cfg.base, Code):
        return cfg.base
    if cfg.base is None:
        raise ValueError(f"phase {cfg.phase!r} needs a base code")
    return read_code(cfg.base)


def run_search(cfg: SearchConfig) -> list[Discovery]:
    """Run the configured phase; returns verified discoveries by trial."""
    found: list[Discovery] = []
    base = _load_base(cfg) if cfg.phase in ("extend", "neighbour-chain") else None
    if base is not None:
        failure = self_dual_failure(base)
        if failure is not None:
            raise ValueError(f"base code is not self-dual: {failure}")

    for trial in range(cfg.max_trials):
        rng = _trial_rng(cfg.seed, trial)
        if cfg.phase == "construct":
            found.extend(_construct_trial(cfg, rng, trial))
        elif cfg.phase == "extend":
            found.extend(_extend_trial(cfg, base, rng, trial))
        else:
            found.extend(_chain_trial(cfg, base, rng, trial))

    seen: dict[tuple, int] = {}
    for disc in found:
        first = seen.setdefault(disc.key(), disc.trial)
        if first != disc.trial:
            disc.duplicate_of = first
    return found


def _emit(cfg, code, report, trial, provenance) -> list[Discovery]:
    return [
        Discovery(
            n=code.n,
            ring=code.ring,
            d=report.d,
            family=report.family,
            beta=report.beta,
            gamma=report.gamma,
            novel=not is_known(report.family, report.beta, report.gamma),
            seed=cfg.seed,
            trial=trial,
            generator=code.row_strings(),
            provenance=provenance,
        )
    ]


def _construct_trial(cfg, rng, trial) -> list[Discovery]:
    if cfg.p is None or cfg.ring is None:
        raise ValueError("construct phase needs p and ring")
    if trial < len(cfg.seed_specs):
        spec = cfg.seed_specs[trial]
    else:
        spec = _random_spec(rng, cfg.p, cfg.ring)
    if not self_orthogonality_conditions(spec):
        return []
    code = build(spec)
    if not is_self_dual(code):
        return []
    binary = _binary_view(code)
    if cfg.target_length is not None and binary.n != cfg.target_length:
        return []
    report = _classify_or_none(binary, cfg)
    if report is None:
        return []
    return _emit(cfg, binary, report, trial, {"construction": spec.to_dict()})


def _extend_trial(cfg, base, rng, trial) -> list[Discovery]:
    n, ring_id = base.n, base.ring
    for _ in range(64):
        x = _random_vector(rng, n, ring_id)
        if ring.vec_inner(x, x) == 1:
            break
    else:
        return []
    units = [c for c in ring.units(ring_id) if ring.mul(c, c) == 1]
    c = units[int(rng.integers(0, len(units)))]
    extended = extend(base, x, c)
    binary = _binary_view(extended)
    report = _classify_or_none(binary, cfg)
    if report is None:
        return []
    provenance = {
        "base": str(cfg.base),
        "extensions": [
            {"X": ring.vector_to_str(x, n), "c": ring.element_to_char(c)}
        ],
    }
    return _emit(cfg, binary, report, trial, provenance)


def _solve_gf2(equations: list[tuple[int, int]], width: int):
    """Solve <coeff, m> = rhs over F2 for m of `width` bits.

    equations are (coefficient mask, rhs bit).  Returns (particular,
    null_basis) or None when inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}  # column -> fully reduced (coeff, rhs)
    for coeff, rhs in equations:
        for col, (pc, pr) in pivots.items():
            if (coeff >> col) & 1:
                coeff ^= pc
                rhs ^= pr
        if coeff == 0:
            if rhs:
                return None
            continue
        col = (coeff & -coeff).bit_length() - 1
        for other, (pc, pr) in list(pivots.items()):
            if (pc >> col) & 1:
                pivots[other] = (pc ^ coeff, pr ^ rhs)
        pivots[col] = (coeff, rhs)
    particular = 0
    for col, (_, pr) in pivots.items():
        if pr:
            particular |= 1 << col
    null_basis = []
    for j in range(width):
        if j in pivots:
            continue
        v = 1 << j
        for col, (pc, _) in pivots.items():
            if (pc >> j) & 1:
                v |= 1 << col
        null_basis.append(v)
    return particular, null_basis


def neighbours_avoiding_light_words(
    code: Code,
    rep: int,
    w_floor: int = 12,
    limit: int = 16,
    backend: str | None = None,
):
    """Neighbour vectors x in rep + C whose neighbour has d >= w_floor.

    The neighbour <sub, x> with sub = C intersect x-perp has minimum
    weight >= w_floor exactly when every word of weight < w_floor in
    the coset rep + C *and* in C itself is non-orthogonal to x; that is
    a linear condition on x within the coset, solved exactly.  Yields up
    to `limit` solutions.
    """
    if code.ring != F2:
        raise ValueError("binary codes only")
    rep &= (1 << code.n) - 1
    if rep.bit_count() % 2:
        raise ValueError("coset representative must have even weight")
    light = coset_low_weight_words(code, rep, w_floor - 1, backend=backend)
    light += [w for w in coset_low_weight_words(code, 0, w_floor - 1, backend=backend) if w]
    rows = [a for a, _ in code.rows]
    equations = []
    for word in light:
        coeff = 0
        for j, r in enumerate(rows):
            if (word & r).bit_count() & 1:
                coeff |= 1 << j
        rhs = 1 ^ ((word & rep).bit_count() & 1)
        equations.append((coeff, rhs))
    solved = _solve_gf2(equations, code.k)
    if solved is None:
        return
    particular, null_basis = solved
    emitted = 0
    seen = set()
    for i in range(1 << min(len(null_basis), 16)):
        if emitted >= limit:
            return
        m = particular
        idx = i
        j = 0
        while idx:
            if idx & 1:
                m ^= null_basis[j]
            idx >>= 1
            j += 1
        x = rep
        mm = m
        while mm:
            low = mm & -mm
            x ^= rows[low.bit_length() - 1]
            mm ^= low
        if x in seen:
            continue
        seen.add(x)
        emitted += 1
        yield x


def _random_neighbour_vector(rng, code: Code) -> int | None:
    for _ in range(64):
        bits = int.from_bytes(rng.bytes((code.n + 7) // 8), "little")
        bits &= (1 << code.n) - 1
        if bits.bit_count() % 2:
            bits ^= 1
        candidate, degenerate = neighbour(code, bits)
        if not degenerate:
            return bits
    return None


def _chain_trial(cfg, base, rng, trial) -> list[Discovery]:
    current = base
    xs: list[str] = []
    out: list[Discovery] = []
    for _ in range(cfg.chain_length):
        bits = _random_neighbour_vector(rng, current)
        if bits is None:
            break
        current, _ = neighbour(current, bits)
        xs.append(ring.vector_to_str((bits, 0), current.n))
        report = _classify_or_none(current, cfg)
        if report is None:
            continue
        provenance = {"base": str(cfg.base), "neighbours": list(xs)}
        out.extend(_emit(cfg, current, report, trial, provenance))
    return out


# ---------------------------------------------------------------------------
# table reproduction


@dataclass
class RowResult:
    table: int
    row: str
    passed: bool
    expected: dict
    observed: dict
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "table": self.table,
            "row": self.row,
            "passed": self.passed,
            "expected": self.expected,
            "observed": self.observed,
            "note": self.note,
        }


def _observe(code: Code, w_max, threads, backend) -> tuple[dict, WeightReport]:
    report = classified_report(code, w_max, threads=threads, backend=backend)
    observed = {
        "n": code.n,
        "self_dual": is_self_dual(code),
        "d": report.d,
        "family": report.family,
        "beta": report.beta,
        "gamma": report.gamma,
        "a12": report.count(12),
        "a14": report.count(14),
    }
    if report.family is not None:
        observed["novel"] = not is_known(report.family, report.beta, report.gamma)
    return observed, report


def _check_row(table, row, expected, code, w_max, threads, backend) -> RowResult:
    observed, _ = _observe(code, w_max, threads, backend)
    ok = observed["self_dual"] and observed["d"] == expected.get("d", 12)
    for key in ("family", "beta", "gamma", "novel"):
        if key in expected:
            ok = ok and observed.get(key) == expected[key]
    return RowResult(table, row, ok, expected, observed)


def table_pipeline():
    """Builds the published construction/extension pipeline.

    Returns (codes, rows) where codes maps names to Code objects:
    c60u, c64u, gray64, c66, c68u, n0.
    """
    t1 = load_table(1)
    spec = ConstructionSpec.from_dict(t1["construction"])
    c60u = build(spec)

    t2 = load_table(2)
    c64u = extend(
        c60u,
        ring.parse_vector(t2["x"], F2U),
        ring.element_from_char(t2["c"], F2U),
    )
    gray64 = gray_image(c64u)

    t3 = load_table(3)
    x66 = (place_high_bits(t3["x_high_bits"], gray64.n), 0)
    c66 = extend(gray64, x66, ring.element_from_char(t3["c"], F2))

    t4 = load_table(4)
    c68u = extend(
        c64u,
        ring.parse_vector(t4["x"], F2U),
        ring.element_from_char(t4["c"], F2U),
    )
    n0 = gray_image(c68u)
    return {
        "spec": spec,
        "c60u": c60u,
        "c64u": c64u,
        "gray64": gray64,
        "c66": c66,
        "c68u": c68u,
        "n0": n0,
    }


def _neighbour_row_code(base: Code, bits: str) -> tuple[Code, bool]:
    x = place_high_bits(bits, base.n)
    return neighbour(base, x)


def derived_vectors() -> dict | None:
    """Re-derived full-length neighbour vectors, when bundled.

    The published 34-bit vectors for the neighbour tables do not pin
    down the codes in any coordinate frame reconstructable from the
    source (see the repository notes); when present, this data file
    carries seed-searched replacement vectors that realize the same
    (gamma, beta) parameters.
    """
    try:
        return _load_data("derived_neighbours.json")
    except FileNotFoundError:
        return None


def _chain_codes(n0: Code, steps: list[str]) -> list[Code]:
    codes = []
    current = n0
    for bits in steps:
        current, degenerate = _neighbour_row_code(current, bits)
        if degenerate:
            raise ValueError("published chain vector lies inside the code")
        codes.append(current)
    return codes


def reproduce_tables(
    tables=None,
    w_max: int = 14,
    threads: int = 1,
    backend: str | None = None,
    vectors: str = "published",
) -> list[RowResult]:
    """Verify every published table row; returns per-row results.

    `vectors` selects the neighbour vectors for tables 5-8: "published"
    replays the 34-bit vectors from the source tables (documented
    placement: coordinates 35..68), "derived" uses the bundled
    re-derived full-length vectors when available.
    """
    wanted = set(tables) if tables else set(range(1, 9))
    codes = table_pipeline()
    results: list[RowResult] = []

    if 1 in wanted:
        expected = dict(load_table(1)["expect"])
        gray60 = gray_image(codes["c60u"])
        res = _check_row(1, "row 1", expected, gray60, w_max, threads, backend)
        res.observed["base_self_dual"] = is_self_dual(codes["c60u"])
        res.observed["type"] = "II" if is_doubly_even(gray60) else "I"
        res.passed = res.passed and res.observed["base_self_dual"]
        res.passed = res.passed and res.observed["type"] == "I"
        results.append(res)
    if 2 in wanted:
        res = _check_row(
            2, "row 1", dict(load_table(2)["expect"]), codes["gray64"],
            w_max, threads, backend,
        )
        res.observed["base_self_dual"] = is_self_dual(codes["c64u"])
        res.passed = res.passed and res.observed["base_self_dual"]
        results.append(res)
    if 3 in wanted:
        results.append(
            _check_row(3, "row 1", dict(load_table(3)["expect"]), codes["c66"],
                       w_max, threads, backend)
        )
    if 4 in wanted:
        res = _check_row(
            4, "row 1", dict(load_table(4)["expect"]), codes["n0"],
            w_max, threads, backend,
        )
        res.observed["base_self_dual"] = is_self_dual(codes["c68u"])
        res.passed = res.passed and res.observed["base_self_dual"]
        results.append(res)

    if not wanted & {5, 6, 7, 8}:
        return results

    derived = derived_vectors() if vectors == "derived" else None
    if vectors == "derived" and derived is None:
        raise ValueError("no derived neighbour vectors are bundled")

    t5 = load_table(5)
    note = ""
    if derived is not None:
        steps = [entry["x"] for entry in derived["chain"]]
        chain = []
        current = codes["n0"]
        for xbits in steps:
            current, degenerate = neighbour(current, ring.parse_vector(xbits, F2)[0])
            if degenerate:
                raise ValueError("derived chain vector lies inside the code")
            chain.append(current)
        note = "re-derived vectors"
    else:
        chain = _chain_codes(codes["n0"], [s["x_high_bits"] for s in t5["steps"]])
    if 5 in wanted:
        for i, (code, step) in enumerate(zip(chain, t5["steps"])):
            res = _check_row(5, f"step {i}", dict(step["expect"]), code,
                             w_max, threads, backend)
            res.note = note
            results.append(res)

    bases = {"N7": chain[6], "N8": chain[7], "N9": chain[8]}
    for ti in (6, 7, 8):
        if ti not in wanted:
            continue
        data = load_table(ti)
        base = bases[data["base"]]
        derived_rows = derived.get(f"table{ti}") if derived else None
        for r, row in enumerate(data["rows"]):
            if derived_rows is not None:
                x = ring.parse_vector(derived_rows[r]["x"], F2)[0]
            else:
                x = place_high_bits(row["x_high_bits"], base.n)
            nb, degenerate = neighbour(base, x)
            res = _check_row(ti, f"row {r}", dict(row["expect"]), nb,
                             w_max, threads, backend)
            res.note = note
            if degenerate:
                res.passed = False
                res.note = (note + "; " if note else "") + "degenerate vector"
            results.append(res)
    return results
