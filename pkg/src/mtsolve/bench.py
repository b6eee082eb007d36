"""Seeded benchmark sweeps over random M-tensor systems."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional

from .homotopy import TrackerConfig, track
from .mtensor import GeneratorConfig, generate_instance


@dataclass
class BenchRecord:
    m: int
    n: int
    seed: Optional[int]
    euitr: int
    nwitr: int
    time_seconds: float
    residue_orig: float
    residue_scaled: float
    status: str


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


def run_case(m: int, n: int, epsilon: float, seed: int, cfg: Optional[TrackerConfig] = None) -> BenchRecord:
    """Generate one instance and time the solve. Exceptions become a failed row."""
    try:
        A, b, _ = generate_instance(GeneratorConfig(m, n, epsilon, seed))
        t0 = time.perf_counter()
        res = track(A, b, cfg)
        elapsed = time.perf_counter() - t0
    except Exception as exc:  # recorded in the row, the sweep goes on
        return BenchRecord(m, n, seed, 0, 0, 0.0, math.nan, math.nan, f"Error: {type(exc).__name__}: {exc}")
    return BenchRecord(
        m, n, seed, res.euitr, res.nwitr, elapsed, res.residue_orig, res.residue_scaled, res.status.value
    )


def _run_case_args(args):
    return run_case(*args)


def run_bench(
    sizes: Iterable[tuple[int, int]],
    epsilon: float = 0.01,
    seeds: Iterable[int] = (0,),
    cfg: Optional[TrackerConfig] = None,
    jobs: int = 1,
) -> list[BenchRecord]:
    """One record per (size, seed), ordered by size then seed regardless of ``jobs``."""
    seeds = list(seeds)
    cases = [(m, n, epsilon, s, cfg) for m, n in sizes for s in seeds]
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_case_args, cases))
    return [run_case(*c) for c in cases]


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def records_to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow([_cell(getattr(r, k)) for k in CSV_FIELDS])
    return buf.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(
            BenchRecord(
                m=int(row["m"]),
                n=int(row["n"]),
                seed=int(row["seed"]) if row["seed"] else None,
                euitr=int(row["euitr"]),
                nwitr=int(row["nwitr"]),
                time_seconds=float(row["time_seconds"]),
                residue_orig=float(row["residue_orig"]),
                residue_scaled=float(row["residue_scaled"]),
                status=row["status"],
            )
        )
    return out


def records_to_json(records: list[BenchRecord]) -> str:
    # NaN residues of failed rows are written as null
    rows = [{k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in asdict(r).items()} for r in records]
    return json.dumps(rows, indent=2) + "\n"


def records_from_json(text: str) -> list[BenchRecord]:
    rows = json.loads(text)
    return [
        BenchRecord(**{k: (math.nan if v is None and k.startswith("residue") else v) for k, v in row.items()})
        for row in rows
    ]


def format_table(records: list[BenchRecord]) -> str:
    """Human-readable table laid out like the published results."""
    head = f"{'(m,n)':>9} {'seed':>5} {'euitr':>6} {'nwitr':>6} {'time':>9} {'residue':>12}  status"
    lines = [head, "-" * len(head)]
    for r in records:
        seed = "" if r.seed is None else r.seed
        lines.append(
            f"{f'({r.m},{r.n})':>9} {seed:>5} {r.euitr:>6} {r.nwitr:>6} "
            f"{r.time_seconds:>9.3f} {r.residue_orig:>12.4e}  {r.status}"
        )
    return "\n".join(lines)
