"""Walk through the Dickman function machinery.

Builds the rho table, evaluates the function, density and CDF at a few
points, and verifies the two classical identities numerically:

    integral_0^inf rho = e^gamma
    D(x) - D(x-1) = x e^{-gamma} rho(x)
"""
import math

from dickmanlab import (
    EULER_GAMMA,
    build_rho_table,
    dickman_cdf,
    dickman_density,
    rho,
    rho_integral,
)


def main():
    table = build_rho_table(x_max=30.0, step=1e-3)
    print(f"table: {len(table.values)} nodes on [0, {table.x_max}]")
    print()

    print(" x      rho(x)          density        D(x)")
    for x in (0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0):
        print(f"{x:4.1f}  {rho(table, x):.12e}  {dickman_density(table, x):.6e}"
              f"  {dickman_cdf(table, x):.10f}")
    print()

    total = rho_integral(table, 30.0)
    print(f"integral of rho on [0,30] = {total:.12f}")
    print(f"e^gamma                   = {math.exp(EULER_GAMMA):.12f}")
    print(f"gap                       = {abs(total - math.exp(EULER_GAMMA)):.2e}")
    print()

    print("difference identity D(x) - D(x-1) = x e^-gamma rho(x):")
    for x in (1.5, 3.0, 6.0):
        lhs = dickman_cdf(table, x) - dickman_cdf(table, x - 1.0)
        rhs = x * math.exp(-EULER_GAMMA) * rho(table, x)
        print(f"  x={x:3.1f}: lhs={lhs:.12f}  rhs={rhs:.12f}  diff={abs(lhs-rhs):.2e}")


if __name__ == "__main__":
    main()
