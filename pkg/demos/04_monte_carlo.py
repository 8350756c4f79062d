"""Monte Carlo reproduction of the almost-sure log-average convergence.

Simulates independent paths of the Z sequence, counts hits {T_n = n},
and compares the log-averages with the hybrid reference value (exact DP
head plus the limiting tail).  Also runs the ratio estimator for rho(x).
"""
import argparse
import math

import numpy as np

from dickmanlab import EULER_GAMMA, KappaSeq
from dickmanlab import simulate as sim


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=10**6)
    ap.add_argument("--paths", type=int, default=16)
    ap.add_argument("--seed", type=int, default=12345)
    args = ap.parse_args()

    kappa = KappaSeq(1, mode="exact-multiple")
    paths = [sim.simulate_path(kappa, args.N, args.seed + i, stream=i)
             for i in range(args.paths)]
    log_avgs = [p.log_avg for p in paths]
    oracle = sim.hybrid_oracle_mean(args.N)

    print(f"{args.paths} paths at N = {args.N}:")
    print(f"  per-path log-averages: min {min(log_avgs):.4f}, "
          f"max {max(log_avgs):.4f}, mean {np.mean(log_avgs):.4f}")
    print(f"  hybrid reference mean: {oracle:.4f}")
    print(f"  limit e^-gamma:        {math.exp(-EULER_GAMMA):.4f}")
    print()

    g_est, raw = sim.estimate_gamma(args.N, [args.seed + i for i in range(args.paths)])
    print(f"Euler constant estimate: {g_est:.4f} (true {EULER_GAMMA:.4f})")
    print()

    for x in (1.5, 2.0):
        est = sim.estimate_rho(x, args.N, [args.seed + i for i in range(args.paths)])
        print(f"rho({x}) ratio estimate: {est:.4f} (true {1 - math.log(x):.4f})")
    print()

    disp = sim.dispersion_diagnostic(1.0, [10**4, args.N],
                                     [args.seed + i for i in range(args.paths)])
    print("across-path dispersion of the log-average:")
    for N, s in disp:
        print(f"  N={N:8d}: {s:.4f}")


if __name__ == "__main__":
    main()
