#!/usr/bin/env python3
"""Re-run the published (m, n) grid with seeded random instances.

    python scripts/table1.py                 # desk-scale sizes, 5 seeds
    python scripts/table1.py --full --seeds 0-0 --output table1.csv

``--full`` includes the large cases ((3,400), (4,100), (5,40), ...), which
need several GB of memory and minutes per instance.
"""

import argparse
import statistics
import sys
from collections import defaultdict
from pathlib import Path

from mtsolve.bench import format_table, records_to_csv, run_bench
from mtsolve.cli import parse_seeds
from mtsolve.homotopy import TrackerConfig

DESK = [(3, 10), (3, 50), (3, 100), (4, 10), (4, 30), (5, 10), (5, 20), (6, 5), (6, 10)]
FULL = [
    (3, 10), (3, 50), (3, 100), (3, 200), (3, 400),
    (4, 10), (4, 50), (4, 80), (4, 100),
    (5, 10), (5, 20), (5, 40),
    (6, 5), (6, 10), (6, 15),
]


def summarize(records):
    by_size = defaultdict(list)
    for r in records:
        by_size[(r.m, r.n)].append(r)
    print(f"\n{'(m,n)':>9} {'runs':>5} {'euitr':>6} {'nwitr':>6} {'time':>9} {'max residue':>12}")
    for (m, n), rs in by_size.items():
        ok = [r for r in rs if r.status == "Converged"]
        if not ok:
            print(f"{f'({m},{n})':>9} {len(rs):>5}  no converged runs")
            continue
        print(
            f"{f'({m},{n})':>9} {len(rs):>5} {statistics.median(r.euitr for r in ok):>6g} "
            f"{statistics.median(r.nwitr for r in ok):>6g} "
            f"{statistics.median(r.time_seconds for r in ok):>9.3f} "
            f"{max(r.residue_orig for r in ok):>12.4e}"
        )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true")
    ap.add_argument("--seeds", type=parse_seeds, default=parse_seeds("0-4"))
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--output")
    args = ap.parse_args()

    sizes = FULL if args.full else DESK
    records = run_bench(sizes, args.epsilon, args.seeds, TrackerConfig(), jobs=args.jobs)
    print(format_table(records))
    summarize(records)
    if args.output:
        Path(args.output).write_text(records_to_csv(records))
    return 0 if all(r.status == "Converged" for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
