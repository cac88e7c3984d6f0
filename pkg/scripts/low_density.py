"""Below the square threshold's upper range: at p = n^(-0.9) induced squares
appear while K_{2,3} does not, and peripherals are single squares."""

import argparse
from collections import Counter

from coxthick.density import DensitySchedule
from coxthick.random_lab import SweepConfig, run_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3000)
    ap.add_argument("--exponent", type=float, default=-0.9)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = SweepConfig([args.n], DensitySchedule(f"n^({args.exponent})"), args.trials, args.seed,
                      args.workers)
    recs = run_sweep(cfg).records
    good = sum(r.has_k22 and not r.has_k23 for r in recs)
    relhyp = [r for r in recs if r.status == "RelativelyHyperbolic"]
    print(f"status counts: {dict(Counter(r.status for r in recs))}")
    print(f"square present, K23 absent: {good}/{len(recs)}")
    print(f"relhyp trials with square peripherals: "
          f"{sum(r.peripheral_all_squares for r in relhyp)}/{len(relhyp)}")
    print(f"mean giant fraction: {sum(r.giant_fraction for r in recs) / len(recs):.4f}")
    print(f"nontree components besides the giant: {sum(r.nontree_components for r in recs)}")


if __name__ == "__main__":
    main()
