"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when any fails, 2 on usage or
hypothesis errors. Reports go to stdout as PASS/FAIL lines; ``--out`` also
writes JSON (or CSV by extension), resolved against $ENVSIEVE_OUTDIR when
relative.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import envelope, gfunc, verify
from .errors import HypothesisViolation, ResourceBudgetError, UsageError
from .expsum import CoefficientSeq, PrimeWindow, farey, moment_estimate
from .report import FIELDS, VerificationReport, _plain

log = logging.getLogger("envsieve")
OUTDIR_ENV = "ENVSIEVE_OUTDIR"


def resolve_out(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTDIR_ENV)
    return p if p.is_absolute() or not base else Path(base) / p


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def render(config: dict, reports: list[VerificationReport], fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("# config: " + json.dumps(_plain(config), sort_keys=True) + "\n")
        w = csv.writer(buf)
        w.writerow(FIELDS)
        for r in reports:
            d = r.to_dict()
            w.writerow([json.dumps(d[k]) if k == "params" else d[k] for k in FIELDS])
        return buf.getvalue()
    doc = {"config": _plain(config), "reports": [r.to_dict() for r in reports]}
    if extra:
        doc.update(_plain(extra))
    return json.dumps(doc, indent=2, default=str) + "\n"


def emit(args, reports: list[VerificationReport], extra: dict | None = None) -> int:
    for r in reports:
        print(r.line())
    if args.out:
        path = resolve_out(args.out)
        fmt = args.format or ("csv" if path.suffix == ".csv" else "json")
        config = {k: v for k, v in vars(args).items() if k != "func"}
        atomic_write(path, render(config, reports, fmt, extra))
        log.info("wrote %s", path)
    return 0 if all(r.passed for r in reports) else 1


def cmd_envelope(args) -> int:
    params = envelope.SieveParams(Fraction(args.z0), Fraction(args.z))
    sieve = envelope.build(params)
    reports = [envelope.check_envelope(sieve, args.nmax), envelope.check_weights(sieve)]
    tables = {"G": sieve.g_total, "lambda": sieve.lambdas, "w": sieve.weights}
    if not args.out:
        print(f"G(z; z0) = {_plain(sieve.g_total)}")
        for d, lam in sieve.lambdas.items():
            print(f"lambda_{d} = {_plain(lam)}")
        for q, w in sieve.weights.items():
            print(f"w_{q} = {_plain(w)}")
    return emit(args, reports, {"tables": tables})


def _trial_config(args) -> verify.TrialConfig:
    return verify.TrialConfig(N=args.N, M=args.M, Q0=args.Q0, h=args.h, ell=args.ell,
                              coeff_model=args.coeff_model, grid_factor=args.grid_factor,
                              samples_per_arc=args.samples_per_arc)


def cmd_verify(args) -> int:
    sweep = verify.run_sweep(args.theorem, args.trials, args.seed, _trial_config(args))
    status = emit(args, sweep.reports, {"summary": sweep.summary()})
    for tid, s in sweep.summary().items():
        print(f"{tid}: {s['passed']}/{s['trials']} passed, max ratio {s['max_ratio']:.6g}")
    return status


def cmd_lemmas(args) -> int:
    reports = gfunc.check_g_lemmas(args.z0_max, args.y_max)
    reports += verify.check_misc_lemmas(args.x_max, args.seed)
    reports.append(verify.check_t_terms(args.q_max, args.samples, args.seed))
    reports.append(verify.check_s_lower_bound())
    return emit(args, reports)


def cmd_moments(args) -> int:
    model = verify.CoeffModel(args.coeff_model, seed=args.seed, normalize=args.normalize)
    coeffs = verify.gen_coeffs(model, PrimeWindow.of(args.N, args.M))
    est = moment_estimate(coeffs, args.ell, args.grid_factor)
    print(f"moment ell={args.ell}: {est.value:.12g} (K={est.K}, refinement delta {est.refinement_delta:.3g}, exact={est.exact})")
    if args.out:
        atomic_write(resolve_out(args.out), json.dumps(  # moments carry no pass/fail, always JSON
            {"config": {k: v for k, v in vars(args).items() if k != "func"},
             "moment": {"value": est.value, "K": est.K, "refinement_delta": est.refinement_delta, "exact": est.exact}},
            indent=2) + "\n")
    return 0


def cmd_farey(args) -> int:
    system = farey(args.Q0)
    for a, q in system.fractions:
        print(f"{a}/{q}")
    return 0


def cmd_majorant(args) -> int:
    reports = []
    for kind in args.coeff_model:
        for ell in args.ell:
            model = verify.CoeffModel(kind, seed=args.seed, normalize=True)
            coeffs = verify.gen_coeffs(model, PrimeWindow.of(args.N, args.M))
            r = verify.verify_majorant(coeffs, ell, args.grid_factor, args.seed)
            r.parameters["coeff_model"] = kind
            reports.append(r)
    return emit(args, reports)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="envsieve", description="Enveloping sieve and prime exponential-sum checks.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="report path (.json or .csv)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), help="defaults to the --out extension, else json")
        return p

    p = common(sub.add_parser("envelope", help="build the sieve and check it up to nmax"))
    p.add_argument("--z0", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--nmax", type=int, default=5000)
    p.set_defaults(func=cmd_envelope)

    p = common(sub.add_parser("verify", help="randomized trials of one theorem"))
    p.add_argument("--theorem", required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--N", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--Q0", type=int)
    p.add_argument("--h", type=float)
    p.add_argument("--ell", type=float)
    p.add_argument("--coeff-model", choices=verify.KINDS)
    p.add_argument("--grid-factor", type=int, default=16)
    p.add_argument("--samples-per-arc", type=int, default=128)
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("lemmas", help="lemma suite"))
    p.add_argument("--z0-max", type=int, default=100_000)
    p.add_argument("--y-max", type=int, default=200)
    p.add_argument("--x-max", type=int, default=10**6)
    p.add_argument("--q-max", type=int, default=500)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_lemmas)

    p = common(sub.add_parser("moments", help="grid estimate of the ell-th moment"))
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, default=0)
    p.add_argument("--ell", type=float, default=4.0)
    p.add_argument("--coeff-model", choices=verify.KINDS, default="unit")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--grid-factor", type=int, default=16)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("farey", help="list the Farey fractions F(Q0)")
    p.add_argument("--Q0", type=int, required=True)
    p.set_defaults(func=cmd_farey, out=None)

    p = common(sub.add_parser("majorant", help="normalized moment against the unit-coefficient moment"))
    p.add_argument("--N", type=int, default=10**6)
    p.add_argument("--M", type=int, default=0)
    p.add_argument("--ell", type=float, nargs="+", default=[2.5, 4.0])
    p.add_argument("--coeff-model", choices=verify.KINDS, nargs="+", default=["unit", "random_phase"])
    p.add_argument("--grid-factor", type=int, default=16)
    p.set_defaults(func=cmd_majorant)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, HypothesisViolation, ResourceBudgetError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
