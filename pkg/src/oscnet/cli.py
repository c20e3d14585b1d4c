"""Command-line interface for oscillator-network entanglement calculations.

Subcommands
-----------
entropy   entanglement entropy of one bipartition of a graph
scan      exhaustive equal-size bipartition scan with entropy classes
analytic  closed-form gamma families checked against the dense oracle
blocks    stratification ladder-block decomposition of a Hamming graph
verify    association-scheme check of a graph's distance relations

Every run echoes its fully resolved configuration into the output header, so
identical invocations produce byte-identical output (no timestamps).  All
floats are printed with ``repr`` (full double precision) in every format.

Exit codes: 0 success, 2 validation error, 3 numerical error, 4 failed
reproduction or verification check.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional

from .errors import CheckFailure, NumericalError, SchemeError, ValidationError
from .gaussian import (
    CONVENTIONS,
    LITERAL_V,
    Bipartition,
    bipartite_entropy,
    exponent_matrix,
    log_base_label,
)
from .netgraph import (
    HammingSpec,
    build_from_edge_file,
    build_hamming,
    graph_distance_relations,
    hamming_relations,
    potential_matrix,
    verify_scheme,
)
from .reference_tables import check_h23_classes, check_h24_classes
from .scan import ScanConfig, report_to_csv, report_to_json_dict, scan
from .strata import (
    ANALYTIC_FAMILIES,
    analytic_report,
    block_multiplicities,
    state_count_terms,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_CHECK = 4


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    """Deterministic scalar rendering: repr for floats, lowercase bools."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _config_header(config: dict) -> str:
    return "".join(f"# {key}={_fmt(value)}\n" for key, value in config.items())


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in [header] + rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _json_payload(config: dict, body: dict) -> str:
    return json.dumps({"config": config, **body}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------


def _parse_part(text: str, total: int) -> tuple[int, ...]:
    """Parse a 1-based comma list like '1,2,5' into 0-based indices."""
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"cannot parse partition {text!r}: {exc}") from exc
    if not values:
        raise ValidationError("partition list is empty")
    for v in values:
        if not 1 <= v <= total:
            raise ValidationError(
                f"vertex {v} out of range 1..{total} in partition {text!r}"
            )
    return tuple(v - 1 for v in values)


def _resolve_graph(args) -> tuple["np.ndarray", dict]:
    """Build the adjacency matrix from --d/--n or --edges (exactly one)."""
    has_hamming = args.d is not None or args.n is not None
    has_edges = getattr(args, "edges", None) is not None
    if has_hamming and has_edges:
        raise ValidationError("give either --d/--n or --edges, not both")
    if has_hamming:
        if args.d is None or args.n is None:
            raise ValidationError("--d and --n must be given together")
        spec = HammingSpec(d=args.d, n=args.n)
        return build_hamming(spec), {"d": args.d, "n": args.n}
    if has_edges:
        return build_from_edge_file(args.edges), {"edges": args.edges}
    raise ValidationError("no graph given; use --d/--n or --edges")


def _common_config(args, command: str, source: dict) -> dict:
    config = {"command": command}
    config.update(source)
    config.update(
        {
            "g": float(args.g),
            "log_base": log_base_label(args.log_base),
            "convention": args.convention,
            "format": args.format,
            "tol": float(args.tol),
        }
    )
    return config


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_entropy(args) -> int:
    A, source = _resolve_graph(args)
    total = A.shape[0]
    part = Bipartition.of(_parse_part(args.part, total), total)
    V = potential_matrix(A, args.g)
    M = exponent_matrix(V, args.convention)
    result = bipartite_entropy(M, part, log_base=args.log_base, convention=args.convention)
    config = _common_config(args, "entropy", source)
    config["part"] = ",".join(str(v + 1) for v in part.part_a)

    if args.format == "json":
        text = _json_payload(config, {"result": result.to_json_dict()})
    elif args.format == "csv":
        text = _config_header(config) + result.to_csv()
    else:
        rows = [
            [str(i + 1), repr(m.gamma), repr(m.nu), repr(m.entropy), str(m.degeneracy)]
            for i, m in enumerate(result.per_mode)
        ]
        text = (
            _config_header(config)
            + f"total_entropy={result.total_entropy!r}\n"
            + f"mode_count={result.mode_count}\n"
            + _table(["mode", "gamma", "nu", "entropy", "degeneracy"], rows)
        )
    _emit(text, args.out)
    return EXIT_OK


def _strip_members(report):
    classes = tuple(
        dataclasses.replace(cls, members=None) for cls in report.classes
    )
    return dataclasses.replace(report, classes=classes)


def _cmd_scan(args) -> int:
    A, source = _resolve_graph(args)
    need_members = args.members or args.check_table1 or args.check_table2
    config_obj = ScanConfig(
        size_a=args.size_a,
        dedup_complements=args.dedup,
        g=args.g,
        convention=args.convention,
        log_base=args.log_base,
        cluster_tol=args.tol,
        include_members=need_members,
        jobs=args.jobs,
    )
    report = scan(A, config_obj)

    checks: dict[str, dict] = {}
    if args.check_table1:
        checks["table1"] = check_h23_classes(report)
    if args.check_table2:
        checks["table2"] = check_h24_classes(report)

    rendered = report if args.members else _strip_members(report)
    config = _common_config(args, "scan", source)
    config.update(
        {
            "size_a": args.size_a,
            "dedup": args.dedup,
            "jobs": args.jobs,
            "members": args.members,
            "check_table1": args.check_table1,
            "check_table2": args.check_table2,
        }
    )

    if args.format == "json":
        body = {"report": report_to_json_dict(rendered)}
        if checks:
            body["checks"] = checks
        text = _json_payload(config, body)
    else:
        check_lines = "".join(
            f"# check_{name}.{key}={json.dumps(value)}\n"
            for name, summary in checks.items()
            for key, value in summary.items()
        )
        status_lines = "".join(f"check_{name}=pass\n" for name in checks)
        if args.format == "csv":
            text = _config_header(config) + report_to_csv(rendered) + status_lines + check_lines
        else:
            rows = [
                [
                    str(i + 1),
                    repr(cls.entropy),
                    str(cls.abundance),
                    ";".join(str(v + 1) for v in cls.agent),
                    str(cls.min_cut),
                    str(cls.max_cut),
                ]
                for i, cls in enumerate(rendered.classes)
            ]
            text = (
                _config_header(config)
                + f"total_partitions={report.total_partitions}\n"
                + f"class_count={report.class_count}\n"
                + f"min_class_gap={_fmt(report.min_class_gap)}\n"
                + _table(
                    ["class", "entropy", "abundance", "agent", "min_cut", "max_cut"],
                    rows,
                )
                + status_lines
                + check_lines
            )
    _emit(text, args.out)
    return EXIT_OK


def _cmd_analytic(args) -> int:
    if args.d is None or args.n is None:
        raise ValidationError("--d and --n are required for analytic families")
    report = analytic_report(
        args.family, args.d, args.n, args.g, log_base=args.log_base, tol=args.tol
    )
    config = _common_config(args, "analytic", {"d": args.d, "n": args.n})
    config["family"] = args.family

    if args.format == "json":
        text = _json_payload(config, {"report": report.to_json_dict()})
    elif args.format == "csv":
        lines = [_config_header(config), "mode,gamma,degeneracy,entropy\n"]
        for i, mode in enumerate(report.modes, start=1):
            s = "" if mode["entropy"] is None else repr(mode["entropy"])
            lines.append(f"{i},{mode['gamma']!r},{mode['degeneracy']},{s}\n")
        for key in ("formula_entropy", "oracle_entropy", "abs_diff"):
            lines.append(f"# {key}={_fmt(getattr(report, key))}\n")
        lines.append(f"# agreement={_fmt(report.agreement)}\n")
        if report.degeneracy_match is not None:
            lines.append(f"# degeneracy_match={_fmt(report.degeneracy_match)}\n")
        text = "".join(lines)
    else:
        extra_cols = all("m" in mode for mode in report.modes) and len(report.modes) > 0
        header = ["mode", "gamma", "degeneracy", "entropy"]
        if extra_cols:
            header += ["m", "r", "d_prime"]
        rows = []
        for i, mode in enumerate(report.modes, start=1):
            row = [
                str(i),
                repr(mode["gamma"]),
                str(mode["degeneracy"]),
                _fmt(mode["entropy"]),
            ]
            if extra_cols:
                row += [str(mode["m"]), str(mode["r"]), str(mode["d_prime"])]
            rows.append(row)
        tail = (
            f"formula_entropy={_fmt(report.formula_entropy)}\n"
            f"oracle_entropy={report.oracle_entropy!r}\n"
            f"abs_diff={_fmt(report.abs_diff)}\n"
            f"agreement={_fmt(report.agreement)}\n"
        )
        if report.degeneracy_match is not None:
            tail += f"degeneracy_match={_fmt(report.degeneracy_match)}\n"
        text = _config_header(config) + _table(header, rows) + tail
    _emit(text, args.out)
    return EXIT_OK


def _cmd_blocks(args) -> int:
    if args.d is None or args.n is None:
        raise ValidationError("--d and --n are required for the block decomposition")
    blocks = block_multiplicities(args.d, args.n)
    terms = state_count_terms(args.d, args.n)
    spec = HammingSpec(d=args.d, n=args.n)
    config = _common_config(args, "blocks", {"d": args.d, "n": args.n})

    block_dicts = [
        {
            "m": b.m,
            "r": b.r,
            "d_prime": b.d_prime,
            "multiplicity": b.multiplicity,
            "dimension": b.multiplicity * (b.d_prime + 1),
            "diag": list(b.chain.diag),
            "offdiag": list(b.chain.offdiag),
        }
        for b in blocks
    ]
    if args.format == "json":
        text = _json_payload(
            config,
            {
                "vertex_count": spec.vertex_count,
                "blocks": block_dicts,
                "state_count_terms": terms,
            },
        )
    elif args.format == "csv":
        lines = [_config_header(config), "m,r,d_prime,multiplicity,dimension,diag,offdiag\n"]
        for b in block_dicts:
            diag = ";".join(repr(v) for v in b["diag"])
            off = ";".join(repr(v) for v in b["offdiag"])
            lines.append(
                f"{b['m']},{b['r']},{b['d_prime']},{b['multiplicity']},"
                f"{b['dimension']},{diag},{off}\n"
            )
        lines.append(f"# state_count_terms={_fmt(terms)}\n")
        lines.append(f"# vertex_count={spec.vertex_count}\n")
        text = "".join(lines)
    else:
        rows = [
            [
                str(b["m"]),
                str(b["r"]),
                str(b["d_prime"]),
                str(b["multiplicity"]),
                str(b["dimension"]),
                ";".join(repr(v) for v in b["diag"]),
                ";".join(repr(v) for v in b["offdiag"]),
            ]
            for b in block_dicts
        ]
        text = (
            _config_header(config)
            + f"vertex_count={spec.vertex_count}\n"
            + f"state_count_terms={_fmt(terms)}\n"
            + _table(
                ["m", "r", "d_prime", "multiplicity", "dimension", "diag", "offdiag"],
                rows,
            )
        )
    _emit(text, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    has_hamming = args.d is not None or args.n is not None
    if has_hamming and args.edges is None:
        if args.d is None or args.n is None:
            raise ValidationError("--d and --n must be given together")
        spec = HammingSpec(d=args.d, n=args.n)
        relations = hamming_relations(spec)
        source = {"d": args.d, "n": args.n}
    elif args.edges is not None and not has_hamming:
        A = build_from_edge_file(args.edges)
        relations = graph_distance_relations(A)
        source = {"edges": args.edges}
    elif has_hamming and args.edges is not None:
        raise ValidationError("give either --d/--n or --edges, not both")
    else:
        raise ValidationError("no graph given; use --d/--n or --edges")
    config = _common_config(args, "verify", source)
    config["relations"] = len(relations)

    try:
        tensor = verify_scheme(relations)
    except SchemeError as exc:
        payload = {
            "scheme": False,
            "message": str(exc),
            "i": exc.i,
            "j": exc.j,
            "k": exc.k,
        }
        if args.format == "json":
            _emit(_json_payload(config, {"result": payload}), args.out)
        else:
            text = _config_header(config) + "scheme=false\n"
            for key in ("message", "i", "j", "k"):
                text += f"{key}={_fmt(payload[key])}\n"
            _emit(text, args.out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK

    K = tensor.class_count
    valencies = [tensor.valency(i) for i in range(K)]
    if args.format == "json":
        text = _json_payload(
            config,
            {
                "result": {
                    "scheme": True,
                    "classes": K,
                    "valencies": valencies,
                    "intersection_numbers": tensor.p.tolist(),
                }
            },
        )
    elif args.format == "csv":
        lines = [_config_header(config), "k,i,j,p\n"]
        for k in range(K):
            for i in range(K):
                for j in range(K):
                    v = int(tensor.p[k, i, j])
                    if v:
                        lines.append(f"{k},{i},{j},{v}\n")
        text = "".join(lines)
    else:
        rows = [
            [str(k), str(i), str(j), str(int(tensor.p[k, i, j]))]
            for k in range(K)
            for i in range(K)
            for j in range(K)
            if tensor.p[k, i, j]
        ]
        text = (
            _config_header(config)
            + "scheme=true\n"
            + f"classes={K}\n"
            + f"valencies={_fmt(valencies)}\n"
            + _table(["k", "i", "j", "p"], rows)
        )
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        parser.add_argument("--edges", help="edge-list file (first line: vertex count)")
    parser.add_argument("--d", type=int, help="Hamming word length d")
    parser.add_argument("--n", type=int, help="Hamming alphabet size n")
    parser.add_argument("--g", type=float, default=1.0, help="coupling constant (default 1.0)")
    parser.add_argument(
        "--log-base", choices=["2", "e"], default="2", help="entropy log base (default 2)"
    )
    parser.add_argument(
        "--convention",
        choices=list(CONVENTIONS),
        default=LITERAL_V,
        help="ground-state exponent convention (default literal-v)",
    )
    parser.add_argument(
        "--format", choices=["table", "csv", "json"], default="table", help="output format"
    )
    parser.add_argument(
        "--tol", type=float, default=1e-8, help="tolerance for clustering/agreement checks"
    )
    parser.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscnet",
        description="Entanglement entropy of oscillator networks on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_entropy = sub.add_parser("entropy", help="entropy of one bipartition")
    _add_common(p_entropy)
    p_entropy.add_argument(
        "--part", required=True, help="comma list of 1-based vertices in part A"
    )
    p_entropy.set_defaults(func=_cmd_entropy)

    p_scan = sub.add_parser("scan", help="exhaustive bipartition scan")
    _add_common(p_scan)
    p_scan.add_argument("--size-a", type=int, required=True, help="size of part A")
    p_scan.add_argument(
        "--dedup",
        action="store_true",
        help="count each complementary pair once (half splits only)",
    )
    p_scan.add_argument("--jobs", type=int, default=1, help="worker processes")
    p_scan.add_argument(
        "--members", action="store_true", help="include full class memberships (json)"
    )
    p_scan.add_argument(
        "--check-table1",
        action="store_true",
        help="check the H(2,3) scan against the tabulated five classes",
    )
    p_scan.add_argument(
        "--check-table2",
        action="store_true",
        help="check the H(2,4) scan against the tabulated 22 classes",
    )
    p_scan.set_defaults(func=_cmd_scan)

    p_analytic = sub.add_parser("analytic", help="closed-form families vs oracle")
    _add_common(p_analytic, graph=False)
    p_analytic.add_argument(
        "--family", choices=list(ANALYTIC_FAMILIES), required=True,
        help="closed-form family to evaluate",
    )
    p_analytic.set_defaults(func=_cmd_analytic)

    p_blocks = sub.add_parser("blocks", help="ladder-block decomposition")
    _add_common(p_blocks, graph=False)
    p_blocks.set_defaults(func=_cmd_blocks)

    p_verify = sub.add_parser("verify", help="association-scheme verification")
    _add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
