"""Proportion of thick graphs in G(n, a log n / n) over the published grid.

Default runs only the two cells checked by the acceptance suite; --all runs
the whole grid (n up to 10000, slow on one core).

    python scripts/table1.py --trials 30 --seed 7 --workers 4 --out runs/table1
"""

import argparse
import csv
import time
from pathlib import Path

from coxthick.density import DensitySchedule
from coxthick.random_lab import SweepConfig, run_sweep

PUBLISHED = [
    (1.95, 2000, 0.53), (1.95, 2100, 0.515), (1.95, 4000, 0.0),
    (2, 2000, 0.8), (2, 2500, 0.46), (2, 3000, 0.19), (2, 4000, 0.025),
    (2.5, 2500, 1.0), (2.5, 3000, 0.53), (2.5, 4000, 0.0),
    (3, 4000, 0.5), (3, 5000, 0.0),
    (4, 4000, 1.0), (4, 10000, 1.0),
    (5, 4000, 1.0), (5, 10000, 1.0),
    (10, 4000, 1.0), (10, 10000, 1.0),
]
DEFAULT_CELLS = [(10, 4000), (1.95, 4000)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--all", action="store_true")
    ap.add_argument("--out", default="runs/table1")
    args = ap.parse_args()

    cells = [(a, n) for a, n, _ in PUBLISHED] if args.all else DEFAULT_CELLS
    published = {(a, n): v for a, n, v in PUBLISHED}
    rows = []
    for a, n in cells:
        t0 = time.time()
        cfg = SweepConfig([n], DensitySchedule(f"{a}*log(n)/n"), args.trials, args.seed, args.workers)
        rep = run_sweep(cfg)
        rep.write(Path(args.out) / f"a{a}_n{n}")
        prop = rep.aggregates[0]["prop_thick"]
        rows.append([a, n, args.trials, f"{prop:.4g}", published[(a, n)], f"{time.time() - t0:.1f}"])
        print(f"a={a:<5} n={n:<6} prop_thick={prop:.3f}  published={published[(a, n)]}  "
              f"({time.time() - t0:.0f}s)", flush=True)
    Path(args.out).mkdir(parents=True, exist_ok=True)
    with open(Path(args.out) / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["a", "n", "trials", "prop_thick", "published", "seconds"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
