"""Print G, lambda_d and w_q for a sieve and compare w_q with empirical averages of beta."""

import argparse
from fractions import Fraction

from envsieve.envelope import SieveParams, build, empirical_weight


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--z0", default="2")
    ap.add_argument("--z", default="10")
    ap.add_argument("--nmax", type=int, default=20000)
    args = ap.parse_args()
    sieve = build(SieveParams(Fraction(args.z0), Fraction(args.z)))
    print(f"G(z; z0) = {sieve.g_total} ~ {float(sieve.g_total):.6f}")
    print(f"{'d':>6} {'lambda_d':>12}")
    for d, lam in sieve.lambdas.items():
        print(f"{d:6d} {float(lam):12.6f}")
    print(f"{'q':>6} {'w_q':>12} {'empirical':>12}")
    for q, w in sieve.weights.items():
        emp = empirical_weight(sieve, q, 1, args.nmax)
        print(f"{q:6d} {float(w):12.6f} {emp.real:12.6f}")


if __name__ == "__main__":
    main()
