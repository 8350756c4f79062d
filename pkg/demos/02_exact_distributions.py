"""Exact laws of the weighted Bernoulli sums and the local limit effect.

The sum T_n = sum_{k<=n} k Z_k with P(Z_k = 1) = 1/k has an exactly
computable integer law.  As n grows, n P(T_n = n) approaches the Dickman
density at 1, and the scaled law T_n/n approaches the Dickman
distribution in Kolmogorov distance.
"""
import math

from dickmanlab import (
    EULER_GAMMA,
    KappaSeq,
    build_rho_table,
    kolmogorov_distance,
    pmf,
    prob_at,
)
from dickmanlab.exact_dist import point_prob_scan


def main():
    print("exact law of T_3 (rational arithmetic):")
    for v, p in enumerate(pmf(0, 3, mode="exact").probs):
        if p:
            print(f"  P(T_3 = {v}) = {p}")
    print()

    kappa = KappaSeq(1, mode="exact-multiple")
    probs = point_prob_scan(kappa, 2000)
    target = math.exp(-EULER_GAMMA)
    print(f"local limit: n P(T_n = n) -> e^-gamma = {target:.6f}")
    for n in (10, 50, 250, 1000, 2000):
        val = n * probs[n - 1]
        print(f"  n={n:5d}: {val:.8f}  (error {abs(val - target):.2e})")
    print()

    table = build_rho_table()
    print("Kolmogorov distance of T_2^n / (n-2) to the Dickman CDF:")
    for n in (20, 40, 100, 400):
        print(f"  n={n:4d}: {kolmogorov_distance(pmf(2, n), table):.6f}")
    print()

    print("support gap: P(T_5^15 = v) = 0 for v in [1, 5]:")
    d = pmf(5, 15)
    print(" ", [prob_at(d, v) for v in range(0, 7)])


if __name__ == "__main__":
    main()
