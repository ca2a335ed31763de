"""Majorant quotient at N = 10^6 for normalized unit and random-phase coefficients."""

import argparse

from envsieve import verify
from envsieve.expsum import PrimeWindow


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ell", type=float, nargs="+", default=[2.5, 3.0, 4.0, 6.0])
    args = ap.parse_args()
    window = PrimeWindow.of(args.N)
    for kind in ("unit", "random_phase", "random_complex", "sparse"):
        coeffs = verify.gen_coeffs(verify.CoeffModel(kind, seed=args.seed, normalize=True), window)
        for ell in args.ell:
            r = verify.verify_majorant(coeffs, ell)
            p = r.parameters
            print(f"{kind:15s} ell={ell:<4g} L={p['L']:.6g} U={p['U']:.6g} L/U={p['implied_constant']:.4g} "
                  f"{'PASS' if r.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
