"""Command line front end: ``mtsolve generate | solve | bench``.

Exit codes: 0 converged, 1 numerical failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path

from .bench import (
    BenchRecord,
    format_table,
    records_to_csv,
    records_to_json,
    run_bench,
)
from .homotopy import TrackerConfig, track
from .mtensor import GeneratorConfig, generate_instance
from .tensor_io import FormatError, read_tensor, read_vector, write_tensor, write_vector

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# sizes used by the desk-scale reproduction of the published table
DEFAULT_SIZES = "3x10,3x50,4x10,5x10,6x5"


def parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        try:
            m, n = (int(v) for v in item.lower().split("x"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size {item!r}, expected MxN like 3x10") from None
        sizes.append((m, n))
    return sizes


def parse_seeds(text: str) -> list[int]:
    """``"0-4"`` -> 0..4, ``"1,5,9"`` -> those seeds; forms can be mixed."""
    seeds = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        try:
            if "-" in item:
                lo, hi = (int(v) for v in item.split("-"))
                seeds.extend(range(lo, hi + 1))
            else:
                seeds.append(int(item))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed spec {item!r}") from None
    return seeds


def _add_tracker_flags(p: argparse.ArgumentParser):
    p.add_argument("--h-init", type=float, default=TrackerConfig.h_init)
    p.add_argument("--newton-tol", type=float, default=TrackerConfig.newton_tol)
    p.add_argument("--final-tol", type=float, default=TrackerConfig.final_tol)
    p.add_argument(
        "--jacobian-mode", choices=("on_the_fly", "materialized"), default=TrackerConfig.jacobian_mode
    )


def _tracker_config(args) -> TrackerConfig:
    return TrackerConfig(
        h_init=args.h_init,
        newton_tol=args.newton_tol,
        final_tol=args.final_tol,
        jacobian_mode=args.jacobian_mode,
    )


def cmd_generate(args) -> int:
    cfg = GeneratorConfig(args.order, args.dim, args.epsilon, args.seed)
    A, b, _ = generate_instance(cfg)
    prefix = args.output
    Path(prefix).parent.mkdir(parents=True, exist_ok=True)
    write_tensor(f"{prefix}.tensor", A)
    write_vector(f"{prefix}.rhs", b)
    print(f"wrote {prefix}.tensor and {prefix}.rhs (m={cfg.m}, n={cfg.n}, seed={cfg.seed})")
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        A = read_tensor(args.tensor)
        b = read_vector(args.rhs)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if b.size != A.dim or (b <= 0).any():
        print(f"error: rhs must be a positive vector of length {A.dim}", file=sys.stderr)
        return EXIT_INPUT
    t0 = time.perf_counter()
    res = track(A, b, _tracker_config(args))
    elapsed = time.perf_counter() - t0
    rec = BenchRecord(
        A.order, A.dim, None, res.euitr, res.nwitr, elapsed, res.residue_orig, res.residue_scaled, res.status.value
    )
    out = asdict(rec)
    out["x"] = res.x.tolist()
    print(json.dumps(out))
    if not res.converged:
        print(f"error: tracking stopped with status {res.status.value} at t={res.t:.6g}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_bench(args) -> int:
    records = run_bench(args.sizes, args.epsilon, args.seeds, _tracker_config(args), jobs=args.jobs)
    table = format_table(records)
    if args.format == "table":
        report = table + "\n"
    elif args.format == "json":
        report = records_to_json(records)
    else:
        report = records_to_csv(records)
    if args.output:
        Path(args.output).write_text(report)
        print(table)
    else:
        sys.stdout.write(report)
        if args.format != "table":
            print(table, file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtsolve", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random M-tensor system to files")
    g.add_argument("-m", "--order", type=int, required=True)
    g.add_argument("-n", "--dim", type=int, required=True)
    g.add_argument("--epsilon", type=float, default=0.01)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True, help="path prefix for .tensor/.rhs files")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve A x^(m-1) = b from files")
    s.add_argument("tensor")
    s.add_argument("rhs")
    _add_tracker_flags(s)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="seeded sweep over (m, n) sizes")
    b.add_argument("--sizes", type=parse_sizes, default=parse_sizes(DEFAULT_SIZES), help="e.g. 3x10,4x10")
    b.add_argument("--seeds", type=parse_seeds, default=parse_seeds("0-4"), help="e.g. 0-4 or 1,7,9")
    b.add_argument("--epsilon", type=float, default=0.01)
    b.add_argument("--format", choices=("csv", "json", "table"), default="csv")
    b.add_argument("--output")
    b.add_argument("--jobs", type=int, default=1)
    _add_tracker_flags(b)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
