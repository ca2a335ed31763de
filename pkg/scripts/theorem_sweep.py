"""Randomized sweep over every theorem harness; prints max ratio per theorem id.

    python3 scripts/theorem_sweep.py --trials 200 --seed 0 --out sweep.json
"""

import argparse
import json

from envsieve import verify
from envsieve.cli import atomic_write, resolve_out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()
    summary = {}
    for th in ("extensionprecise", "bel", "extension", "maincor", "extensionprecisebis"):
        sweep = verify.run_sweep(th, args.trials, args.seed)
        summary.update(sweep.summary())
    for tid, s in summary.items():
        print(f"{tid:26s} {s['passed']:4d}/{s['trials']:<4d} max ratio {s['max_ratio']:.4g}")
    if args.out:
        atomic_write(resolve_out(args.out), json.dumps({"config": vars(args), "summary": summary}, indent=2) + "\n")


if __name__ == "__main__":
    main()
