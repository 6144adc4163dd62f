"""Command line front end.

    fourqubit invariants ghz4:gamma=0.6
    fourqubit concurrence gag:gamma=0.2
    fourqubit bell phi2:J=2,Js=2 --restarts 32 --seed 7
    fourqubit classify file:state.json --tol 1e-10
    fourqubit sweep phi2:Js=2 --param J --range 0.1 8 --points 80 --normalize-s --out phi2_J.csv

Exit codes: 0 ok, 2 bad arguments or state spec, 3 state file schema
error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
import warnings

from .bellopt import classify_bell, optimize_bell
from .entanglement import concurrence_panel
from .families import (BoundaryParameterWarning, SpecError, build_family, family_criteria,
                       parse_family_spec, slocc_report)
from .invariants import all_invariants
from .qcore import StateFileError, load_state
from .sweep import SweepSpec, rows_to_csv, run_sweep

EXIT_OK, EXIT_SPEC, EXIT_SCHEMA, EXIT_IO = 0, 2, 3, 4


class CliIOError(Exception):
    pass


def _g(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # + 0.0 turns -0.0 into 0.0


def resolve_state(text: str):
    """Return (state, family, params); family and params are None for files."""
    if text.startswith("file:"):
        path = text[len("file:"):]
        try:
            return load_state(path), None, None
        except OSError as exc:
            raise CliIOError(f"cannot read {path}: {exc}") from exc
    family, params = parse_family_spec(text)
    return build_family(family, params), family, params


def cmd_invariants(args, out):
    state, _, _ = resolve_state(args.state)
    for name, val in all_invariants(state).as_dict().items():
        out.write(f"{name}_re = {_g(val.real)}\n")
        out.write(f"{name}_im = {_g(val.imag)}\n")


def cmd_concurrence(args, out):
    state, _, _ = resolve_state(args.state)
    panel = concurrence_panel(state)
    for (i, j), c in panel.pairs.items():
        out.write(f"C{i}{j} = {_g(c)}\n")
    out.write(f"sumC2 = {_g(panel.sum_sq)}\n")
    out.write(f"oneMinusSumC2 = {_g(panel.one_minus_sum_sq)}\n")
    out.write(f"Q = {_g(panel.q_global)}\n")


def cmd_bell(args, out):
    state, _, _ = resolve_state(args.state)
    res = optimize_bell(state, restarts=args.restarts, seed=args.seed, tol=args.tol)
    gt8, gt16 = classify_bell(res.value)
    out.write(f"value = {_g(res.value)}\n")
    out.write(f"exceeds_8 = {str(gt8).lower()}\n")
    out.write(f"exceeds_16 = {str(gt16).lower()}\n")
    out.write(f"seed = {res.seed}\n")
    out.write(f"restarts = {res.restarts_used}\n")
    out.write(f"best_restart = {res.best_restart}\n")
    out.write(f"sweeps = {res.iterations}\n")
    for k in range(4):
        for p, tag in enumerate(("", "'")):
            v = res.settings.vectors[k, p]
            out.write(f"q{k + 1}{tag} = {_g(v[0])} {_g(v[1])} {_g(v[2])}\n")


def cmd_classify(args, out):
    state, family, params = resolve_state(args.state)
    crit = family_criteria(family, params, tol=args.li_tol) if family else {}
    rep = slocc_report(state, tol=args.tol, family_criteria=crit)
    out.write(f"delta_nonzero = {str(rep.delta_nonzero).lower()}\n")
    out.write(f"abs_Delta = {_g(rep.delta_abs)}\n")
    out.write(f"Delta_scale = {_g(rep.delta_scale)}\n")
    out.write(f"h_nonzero = {str(rep.h_nonzero).lower()}\n")
    out.write(f"abs_H = {_g(rep.h_abs)}\n")
    out.write(f"tol = {_g(rep.tol)}\n")
    for name, flag in rep.family_criteria.items():
        out.write(f"{name} = {str(flag).lower()}\n")


def cmd_sweep(args, out):
    family, fixed = parse_family_spec(args.state)
    spec = SweepSpec(family=family, param=args.param, lo=args.range[0], hi=args.range[1],
                     points=args.points, fixed=fixed, restarts=args.restarts, seed=args.seed,
                     tol=args.tol, normalize_s=args.normalize_s, boost_boundary=args.boost_boundary)
    out.write(rows_to_csv(run_sweep(spec, jobs=args.jobs), normalize_s=args.normalize_s))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for Bell restarts")
    common.add_argument("--restarts", type=int, default=32, help="Bell optimiser restarts")
    common.add_argument("--tol", type=float, default=1e-10,
                        help="sweep-gain tolerance (bell, sweep) or zero tolerance (classify)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--normalize-s", action="store_true", help="add S_norm = S / max|S| column")

    parser = argparse.ArgumentParser(prog="fourqubit", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    state_help = "ghz4:gamma=..., phi2:J=...,Js=..., gag:gamma=..., gabgd:a=...,b=...,c=...,d=... or file:<path>"
    for name, func in (("invariants", cmd_invariants), ("concurrence", cmd_concurrence),
                       ("bell", cmd_bell), ("classify", cmd_classify)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("state", help=state_help)
        if name == "classify":
            p.add_argument("--li-tol", type=float, default=1e-8,
                           help="zero tolerance for the per-family GHZ-class equations; "
                                "the default absorbs parameters typed to 8 significant digits")
        p.set_defaults(func=func)
    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("state", help="family with its fixed parameters, e.g. phi2:Js=2 or gag")
    p.add_argument("--param", required=True, help="swept parameter (gamma, gamma2, J, Js, a..d)")
    p.add_argument("--range", nargs=2, type=float, required=True, metavar=("LO", "HI"))
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--boost-boundary", action="store_true",
                   help="double the restarts for ghz4 points with gamma^2 within 0.1 of 0 or 1")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        # open --out before any work so an unwritable path fails fast
        if args.out is not None:
            try:
                fh = open(args.out, "w", newline="")
            except OSError as exc:
                raise CliIOError(f"cannot write {args.out}: {exc}") from exc
        else:
            fh = contextlib.nullcontext(out)
        with fh as dest, warnings.catch_warnings():
            warnings.simplefilter("ignore", BoundaryParameterWarning)
            args.func(args, dest)
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except CliIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
