"""G(n, 1 - alpha/n^2): finite and virtually cyclic frequencies against
their Poisson limits exp(-alpha/2) and (alpha/2) exp(-alpha/2)."""

import argparse

from coxthick.random_lab import high_density_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, nargs="+", default=[0.5, 1.0, 2.0, 4.0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    print("alpha  P_finite  limit    P_virtZ  limit    P_other  disjoint/order0")
    for a in args.alpha:
        r = high_density_experiment(a, args.n, args.trials, args.seed)
        print(f"{a:<6} {r['P_finite']:.4f}    {r['limit_finite']:.4f}   {r['P_virtZ']:.4f}   "
              f"{r['limit_virtz']:.4f}   {r['P_other']:.4f}   "
              f"{r['disjoint_among_other']}/{r['order0_among_disjoint']}")


if __name__ == "__main__":
    main()
