"""Command-line interface.

Exit codes: 0 success / verification passed, 1 verification mismatch,
2 malformed input or precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ring
from .codes import (
    Code,
    CodeFormatError,
    classified_report,
    extremal_bound,
    gray_image,
    is_doubly_even,
    is_self_dual,
    read_code,
    self_dual_failure,
    write_code,
)
from .construction import (
    ConstructionSpec,
    build,
    qr_sum_invertible,
    self_orthogonality_conditions,
)
from .ring import F2, F2U
from .search import SearchConfig, reproduce_tables, run_search
from .transforms import extend, neighbour, neighbour_chain


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--w-max", type=int, default=14, help="weight cutoff (default 14)")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=str, default=None, help="write the resulting code/records here")
    parser.add_argument("--format", choices=("text", "json"), default="text")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrsd",
        description="Self-dual codes from block quadratic-residue circulant constructions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-tables", help="rebuild and verify the published code tables")
    p.add_argument("--tables", type=str, default=None, help="comma-separated table numbers")
    p.add_argument(
        "--vectors",
        choices=("published", "derived"),
        default="published",
        help="neighbour vectors for tables 5-8",
    )
    _add_common(p)

    p = sub.add_parser("analyze", help="verify self-duality and report weight data")
    p.add_argument("codefile")
    _add_common(p)

    p = sub.add_parser("construct", help="build a code from a construction spec file")
    p.add_argument("specfile")
    _add_common(p)

    p = sub.add_parser("extend", help="two-coordinate extension by a vector file")
    p.add_argument("codefile")
    p.add_argument("xfile")
    _add_common(p)

    p = sub.add_parser("neighbour", help="neighbour through a binary vector file")
    p.add_argument("codefile")
    p.add_argument("xfile")
    _add_common(p)

    p = sub.add_parser("chain", help="successive neighbours through a list of vectors")
    p.add_argument("codefile")
    p.add_argument("chainfile")
    _add_common(p)

    p = sub.add_parser("search", help="seeded random search from a JSON config")
    p.add_argument("configfile")
    _add_common(p)
    return parser


def _code_report(code: Code, w_max: int, threads: int) -> dict:
    report = {
        "ring": code.ring,
        "n": code.n,
        "k": code.k,
        "self_dual": is_self_dual(code),
    }
    failure = self_dual_failure(code)
    if failure is not None:
        report["failure"] = failure
        return report
    binary = gray_image(code) if code.ring == F2U else code
    if code.ring == F2U:
        report["gray"] = {"n": binary.n, "k": binary.k, "self_dual": is_self_dual(binary)}
    weights = classified_report(binary, w_max, threads=threads)
    code_type = "II" if is_doubly_even(binary) else "I"
    bound = extremal_bound(binary.n, code_type)
    report.update(
        {
            "type": code_type,
            "d": weights.d,
            "extremal_bound": bound,
            "extremal": weights.d == bound,
            "counts": {str(w): c for w, c in weights.counts.items() if c},
            "family": weights.family,
            "beta": weights.beta,
            "gamma": weights.gamma,
            "warnings": list(weights.warnings),
        }
    )
    return report


def _print_code_report(report: dict) -> None:
    print(f"ring={report['ring']} n={report['n']} k={report['k']}")
    if not report["self_dual"]:
        print(f"self-dual: no ({report.get('failure', '')})")
        return
    print("self-dual: yes")
    if "gray" in report:
        g = report["gray"]
        print(f"gray image: [{g['n']},{g['k']}] self-dual: {'yes' if g['self_dual'] else 'no'}")
    d = report["d"]
    extremal = " (extremal)" if report["extremal"] else ""
    d_text = str(d) if d is not None else "not certified (no word at or below w_max)"
    print(f"type: {report['type']}")
    print(f"d: {d_text} bound: {report['extremal_bound']}{extremal}")
    for w, c in sorted(report["counts"].items(), key=lambda kv: int(kv[0])):
        print(f"A_{w} = {c}")
    if report["family"]:
        parts = [f"family: {report['family']}", f"beta={report['beta']}"]
        if report["gamma"] is not None:
            parts.append(f"gamma={report['gamma']}")
        print(" ".join(parts))
    for warning in report["warnings"]:
        print(f"warning: {warning}")


def _emit(report: dict, args) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        _print_code_report(report)


def _read_vector_file(path: str, ring_id: str):
    """Vector files: optional `c=<unit>` line, then one vector line."""
    c = 1
    vec = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("c="):
                c = ring.element_from_char(line[2:].strip(), ring_id)
            elif vec is None:
                vec = ring.parse_vector(line, ring_id)
            else:
                raise CodeFormatError(lineno, "unexpected extra line")
    if vec is None:
        raise CodeFormatError(1, "no vector found")
    return vec, c


def cmd_verify_tables(args) -> int:
    tables = None
    if args.tables:
        tables = [int(t) for t in args.tables.split(",")]
    rows = reproduce_tables(
        tables=tables,
        w_max=args.w_max,
        threads=args.threads,
        vectors=args.vectors,
    )
    ok = all(r.passed for r in rows)
    if args.format == "json":
        print(json.dumps({"passed": ok, "rows": [r.to_dict() for r in rows]}, indent=2))
    else:
        for r in rows:
            exp = r.expected
            obs = r.observed
            expected = ",".join(
                f"{k}={exp[k]}" for k in ("family", "beta", "gamma", "novel") if k in exp
            )
            got = (
                f"d={obs.get('d')} A12={obs.get('a12')} A14={obs.get('a14')} "
                f"family={obs.get('family')} beta={obs.get('beta')} gamma={obs.get('gamma')}"
            )
            note = f" [{r.note}]" if r.note else ""
            print(f"table{r.table} {r.row}: {'PASS' if r.passed else 'FAIL'} "
                  f"expected {expected} got {got}{note}")
        print(f"verify-tables: {'PASS' if ok else 'FAIL'} "
              f"({sum(r.passed for r in rows)}/{len(rows)} rows)")
    return 0 if ok else 1


def cmd_analyze(args) -> int:
    code = read_code(args.codefile)
    report = _code_report(code, args.w_max, args.threads)
    _emit(report, args)
    if not report["self_dual"]:
        print(f"error: not self-dual: {report.get('failure')}", file=sys.stderr)
        return 2
    return 0


def cmd_construct(args) -> int:
    with open(args.specfile, "r", encoding="utf-8") as fh:
        spec = ConstructionSpec.from_json(fh.read())
    code = build(spec)
    report = _code_report(code, args.w_max, args.threads)
    report["self_orthogonality_conditions"] = self_orthogonality_conditions(spec)
    report["qr_sum_invertible"] = qr_sum_invertible(spec)
    _emit(report, args)
    if args.out:
        write_code(code, args.out)
    return 0 if report["self_dual"] else 1


def cmd_extend(args) -> int:
    code = read_code(args.codefile)
    x, c = _read_vector_file(args.xfile, code.ring)
    extended = extend(code, x, c)
    report = _code_report(extended, args.w_max, args.threads)
    _emit(report, args)
    if args.out:
        write_code(extended, args.out)
    return 0


def cmd_neighbour(args) -> int:
    code = read_code(args.codefile)
    x, _ = _read_vector_file(args.xfile, F2)
    result, degenerate = neighbour(code, x[0])
    report = _code_report(result, args.w_max, args.threads)
    report["degenerate"] = degenerate
    _emit(report, args)
    if degenerate:
        print("warning: vector already lies in the code", file=sys.stderr)
    if args.out:
        write_code(result, args.out)
    return 0


def cmd_chain(args) -> int:
    code = read_code(args.codefile)
    xs = []
    with open(args.chainfile, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                xs.append(ring.parse_vector(line, F2)[0])
    chain = neighbour_chain(code, xs)
    reports = [_code_report(c, args.w_max, args.threads) for c in chain]
    if args.format == "json":
        print(json.dumps({"steps": reports}, indent=2))
    else:
        for i, rep in enumerate(reports):
            print(f"-- step {i} --")
            _print_code_report(rep)
    if args.out and chain:
        write_code(chain[-1], args.out)
    return 0


def cmd_search(args) -> int:
    with open(args.configfile, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    data.setdefault("seed", args.seed)
    data.setdefault("w_max", args.w_max)
    data.setdefault("threads", args.threads)
    cfg = SearchConfig.from_dict(data)
    discoveries = run_search(cfg)
    records = [d.to_record() for d in discoveries]
    if args.format == "json":
        print(json.dumps({"discoveries": records}, indent=2))
    else:
        for r in records:
            dup = f" duplicate-of-trial-{r['duplicate_of']}" if r["duplicate_of"] is not None else ""
            novel = " NEW" if r["novel"] else ""
            print(
                f"trial {r['trial']}: [{r['n']},{r['n'] // 2},{r['d']}] "
                f"{r['family']} beta={r['beta']} gamma={r['gamma']}{novel}{dup}"
            )
        print(f"search: {len(records)} discoveries in {cfg.max_trials} trials")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(record) + "\n")
    return 0


_COMMANDS = {
    "verify-tables": cmd_verify_tables,
    "analyze": cmd_analyze,
    "construct": cmd_construct,
    "extend": cmd_extend,
    "neighbour": cmd_neighbour,
    "chain": cmd_chain,
    "search": cmd_search,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CodeFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
