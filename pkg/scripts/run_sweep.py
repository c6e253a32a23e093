"""Run the identity sweep and write JSON and text reports.

    python3 scripts/run_sweep.py --n 50 --seed 7 --out sweep_seed7
"""

import argparse
import time
from pathlib import Path

from bihumbert.identities import resolve_ids, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ids", default="all")
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="sweep")
    args = ap.parse_args()

    start = time.perf_counter()
    report = sweep(resolve_ids(args.ids), args.n, seed=args.seed, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    out = Path(args.out)
    out.with_suffix(".json").write_text(report.to_json())
    out.with_suffix(".txt").write_text(report.to_text())
    print(report.to_text())
    print(f"{len(report.identities)} ids in {elapsed:.1f}s -> {out}.json, {out}.txt")


if __name__ == "__main__":
    main()
