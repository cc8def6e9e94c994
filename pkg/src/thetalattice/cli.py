"""Command-line front end: seeded, reproducible construction, verification,
census, reporting, embedding and export.

Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .census import census as census_of_graph
from .census import voltage_census
from .certify import certify as run_certify
from .certify import verify_certificate
from .embed import (
    check_embedding_properties,
    find_good_try,
    try_to_json_dict,
    try_to_obj,
)
from .entropy import lattice_report, min_degree_for_kappa, summary_table
from .errors import (
    AttemptsExhausted,
    BudgetExhausted,
    DegreeTooSmall,
    GridTooCoarse,
    InvalidCertificate,
    MalformedGraph,
    TooLarge,
    TorusTooSmall,
)
from .graphs import (
    build_root_unit_graph,
    central_subgraph,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
)
from .voltage import (
    LiftCertificate,
    build_base_graph,
    derived_torus,
    full_unit_graph,
)

_USAGE_ERRORS = (
    DegreeTooSmall,
    TorusTooSmall,
    GridTooCoarse,
    TooLarge,
    MalformedGraph,
    ValueError,
)


def _write(path: str | Path, text: str) -> None:
    Path(path).write_text(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_kappa(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {text!r}: {exc}") from exc


def _truncated_voltage(cert: LiftCertificate, trunc_s: int | None):
    """Base graph and voltage from a certificate, optionally keeping only the
    first trunc_s lift stages (the placement procedure is stage-agnostic)."""
    base, _ = build_base_graph(cert.d)
    volt = cert.to_voltage(base)
    if trunc_s is None or trunc_s >= volt.s:
        return base, volt
    keep = (1 << trunc_s) - 1
    bits = {e: m & keep for e, m in volt.level_bits.items() if m & keep}
    return base, volt.with_bits(trunc_s, bits)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_construct(args) -> int:
    if args.kappa is not None:
        kappa = _parse_kappa(args.kappa)
        d = min_degree_for_kappa(kappa)
        print(f"kappa {kappa} -> minimal degree d = {d}")
    else:
        d = args.d
    t0 = time.perf_counter()
    try:
        cert, _, _ = run_certify(
            d,
            policy=args.policy,
            max_s=args.max_s,
            seed=args.seed,
            pool_size=args.pool_size,
        )
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    elapsed = time.perf_counter() - t0
    out = args.output or f"cert_d{d}.json"
    _write(out, cert.to_json())
    print(
        f"certified d={cert.d} with s={cert.s} stages "
        f"({cert.constraint_count} constraint cycles, {elapsed:.1f}s) -> {out}"
    )
    print(f"flags: {cert.flags.to_dict()}")
    return 0 if cert.flags.all_true else 1


def _cmd_verify(args) -> int:
    if args.torus_n < 2:
        raise TorusTooSmall("--torus-n must be >= 2")
    cert = LiftCertificate.from_json(Path(args.certificate).read_text())
    base, _ = build_base_graph(cert.d)
    volt = cert.to_voltage(base)
    t0 = time.perf_counter()
    fresh = verify_certificate(
        base, volt, seed=cert.seed, constraint_count=cert.constraint_count
    )
    print(f"certificate: d={cert.d} s={cert.s} seed={cert.seed}")
    print(f"constraint cycles: {fresh.constraint_count}")
    print(f"recomputed flags: {fresh.flags.to_dict()}")
    ok = fresh.flags.all_true and fresh.flags == cert.flags
    if cert.s <= 3:
        report = voltage_census(base, volt)
        torus = derived_torus(base, volt, args.torus_n)
        explicit = census_of_graph(torus)
        n3 = args.torus_n**3
        match = (
            explicit.c4_total == n3 * report.c4_total
            and explicit.c4_stray == n3 * report.c4_stray
            and explicit.c6 == n3 * report.c6
            and explicit.theta222 == n3 * report.theta222
        )
        print(f"explicit torus cross-check at n={args.torus_n}: {'PASS' if match else 'FAIL'}")
        ok = ok and match
    if ok:
        summary = lattice_report(fresh)
        print(summary_table([summary]))
    print(f"elapsed: {time.perf_counter() - t0:.1f}s")
    print(f"VERDICT: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _cmd_census(args) -> int:
    g = graph_from_json(Path(args.graph).read_text())
    report = census_of_graph(g)
    text = _json_text(report.to_json_dict())
    if args.output:
        _write(args.output, text)
    print(text, end="")
    return 0


def _cmd_report(args) -> int:
    cert = LiftCertificate.from_json(Path(args.certificate).read_text())
    kappa = _parse_kappa(args.kappa) if args.kappa else None
    summary = lattice_report(cert, kappa)
    print(summary_table([summary]))
    if args.output:
        _write(args.output, summary.to_json())
    return 0


def _cmd_embed(args) -> int:
    cert = LiftCertificate.from_json(Path(args.certificate).read_text())
    _, volt = _truncated_voltage(cert, args.trunc_s)
    root = build_root_unit_graph(cert.d)
    fug = full_unit_graph(root, volt)
    resolution = Fraction(args.grid_resolution)
    try:
        t, attempts = find_good_try(
            fug, args.seed, args.max_attempts, resolution
        )
    except AttemptsExhausted as exc:
        print(f"embedding failed: {exc}", file=sys.stderr)
        return 3
    print(
        f"good try for d={cert.d} s={volt.s} after {attempts} attempt(s); "
        f"{fug.vertex_count} vertices, {len(fug.edges)} edges"
    )
    props = check_embedding_properties(t, fug)
    print(f"placement checklist: {props}")
    out = args.output or f"embedding_d{cert.d}_s{volt.s}.json"
    _write(out, _json_text(try_to_json_dict(t, attempts, args.seed)))
    print(f"wrote {out}")
    if args.obj:
        _write(args.obj, try_to_obj(t, fug))
        print(f"wrote {args.obj}")
    return 0 if all(props.values()) else 1


def _cmd_export(args) -> int:
    d = args.d
    if args.kind == "root":
        g = build_root_unit_graph(d)
    elif args.kind == "central":
        g = central_subgraph(build_root_unit_graph(d))
    elif args.kind == "base":
        g = build_base_graph(d)[0].graph
    elif args.kind == "full-unit":
        if args.certificate:
            cert = LiftCertificate.from_json(Path(args.certificate).read_text())
            if cert.d != d:
                raise ValueError(f"certificate is for d={cert.d}, not {d}")
            _, volt = _truncated_voltage(cert, args.trunc_s)
        else:
            _, volt = build_base_graph(d)
        g = full_unit_graph(build_root_unit_graph(d), volt)
    else:  # torus
        if args.certificate:
            cert = LiftCertificate.from_json(Path(args.certificate).read_text())
            if cert.d != d:
                raise ValueError(f"certificate is for d={cert.d}, not {d}")
            base, volt = _truncated_voltage(cert, args.trunc_s)
        else:
            base, volt = build_base_graph(d)
        g = derived_torus(base, volt, args.torus_n)
    stem = Path(args.output)
    _write(stem.with_suffix(".json"), graph_to_json(g))
    _write(stem.with_suffix(".dot"), graph_to_dot(g))
    print(f"wrote {stem.with_suffix('.json')} and {stem.with_suffix('.dot')}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetalattice",
        description=(
            "Construct, certify, measure and embed 3D regular bipartite "
            "lattices with no 6-cycles and only-central 4-cycles."
        ),
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="cap on worker count (results never depend on it; current "
        "implementations are sequential)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="search for a certified lift sequence")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--d", type=int, help="regularity degree (>= 5)")
    group.add_argument("--kappa", help="target ratio; picks the minimal degree")
    p.add_argument("--max-s", type=int, default=40, dest="max_s")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy", choices=("auto", "greedy", "random"), default="auto")
    p.add_argument("--pool-size", type=int, default=64, dest="pool_size")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="independently re-verify a certificate")
    p.add_argument("certificate")
    p.add_argument("--torus-n", type=int, default=2, dest="torus_n")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("census", help="exact census of a graph JSON file")
    p.add_argument("graph")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("report", help="lattice summary table for a certificate")
    p.add_argument("certificate")
    p.add_argument("--kappa", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("embed", help="find and verify a straight-line placement")
    p.add_argument("certificate")
    p.add_argument("--trunc-s", type=int, default=None, dest="trunc_s")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=1000, dest="max_attempts")
    p.add_argument(
        "--grid-resolution", default="1/1048576", dest="grid_resolution"
    )
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--obj", default=None)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("export", help="write a constructed graph as JSON and DOT")
    p.add_argument("--d", type=int, required=True)
    p.add_argument(
        "--kind",
        choices=("root", "central", "base", "full-unit", "torus"),
        default="root",
    )
    p.add_argument("--cert", dest="certificate", default=None)
    p.add_argument("--trunc-s", type=int, default=None, dest="trunc_s")
    p.add_argument("--torus-n", type=int, default=2, dest="torus_n")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidCertificate as exc:
        print(f"invalid certificate: {exc}", file=sys.stderr)
        return 1
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
