"""Command line entry point.

Subcommands: verify (run the check suite), norm (windowed norm of a
polynomial), transform (apply a named operator), converge / amalgam (the two
scripted experiments) and ensemble (emit generated polynomials).

Seed precedence: config file < --seed flag < STEPLAB_SEED environment
variable.  Exit codes: 0 success, 1 at least one check failed, 2 bad usage
or configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from .core import TrigPolynomial, evaluate, from_json_dict, to_json_dict
from .experiments import amalgam_experiment, converge_experiment
from .mollifier import Mollifier
from .norms import stepanov_norm, window_profile, abs_power_poly, window_integral
from .operators import (
    dyadic_partial_sum,
    hilbert_pm,
    hilbert_transform,
    lp_piece,
    smoothed_partial_sum,
)
from .verify import (
    EmptyEnsemble,
    EnsembleSpec,
    InfeasibleSpec,
    MUTATIONS,
    generate_ensemble,
    run_suite,
    suite_config_from_dict,
)

ENV_SEED = "STEPLAB_SEED"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="random seed (env STEPLAB_SEED wins)")
    p.add_argument("--config", type=str, default=None, help="JSON config file")
    p.add_argument("--out", type=str, default=None, help="output path")
    p.add_argument("--grid-step", type=float, default=None)
    p.add_argument("--window", type=float, nargs=2, default=None, metavar=("LO", "HI"))
    p.add_argument("--jmax", type=int, default=None)
    p.add_argument("--k", type=int, nargs="+", default=None, help="dyadic norm levels")
    p.add_argument("--tolerance-scale", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steplab", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", help="run the full check suite")
    _add_common(p)
    p.add_argument("--mutation", choices=MUTATIONS, default=None, help="seeded corruption (expected to fail)")
    p.add_argument("--checks", nargs="+", default=None, help="restrict to check name prefixes")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("norm", help="windowed norm estimate of a polynomial")
    _add_common(p)
    p.add_argument("--in", dest="infile", required=True, help="polynomial JSON")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--profile-out", type=str, default=None, help="CSV of x, W(x)")
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("transform", help="apply a named operator to a polynomial")
    _add_common(p)
    p.add_argument("--in", dest="infile", required=True, help="polynomial JSON")
    p.add_argument("--op", required=True, choices=["Sj", "Rj", "H", "H+", "H-", "psik"])
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--band", type=int, default=None, help="band index for psik")
    p.add_argument("--samples-out", type=str, default=None, help="CSV of x, re, im")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("converge", help="lacunary dyadic convergence curve")
    _add_common(p)
    p.add_argument("--N", type=int, default=20, help="lacunary term count (<= 30)")
    p.add_argument("--j-min", type=int, default=0)
    p.add_argument("--grid-points", type=int, default=2001)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("amalgam", help="summed-window norm divergence table")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=1024)
    p.add_argument("--p-conj", type=float, default=2.0)
    p.set_defaults(func=_cmd_amalgam)

    p = sub.add_parser("ensemble", help="emit generated polynomials as JSON")
    _add_common(p)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--terms", type=int, nargs=2, default=(2, 12), metavar=("LO", "HI"))
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--freq-span", type=float, nargs=2, default=(-40.0, 40.0), metavar=("LO", "HI"))
    p.add_argument("--coeff-scale", type=float, default=1.0)
    p.add_argument("--real-valued", action="store_true")
    p.set_defaults(func=_cmd_ensemble)

    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _resolve_seed(args, cfg: dict, default: int = 1) -> int:
    seed = cfg.get("seed", default)
    if args.seed is not None:
        seed = args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        seed = int(env)
    return int(seed)


def _read_poly(path: str) -> TrigPolynomial:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# -- subcommands ---------------------------------------------------------------

def _cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    cfg["seed"] = _resolve_seed(args, cfg)
    if args.tolerance_scale is not None:
        cfg["tolerance_scale"] = args.tolerance_scale
    if args.mutation is not None:
        cfg["mutation"] = args.mutation
    if args.checks is not None:
        cfg["checks"] = tuple(args.checks)
    if args.window is not None:
        cfg["norm_window"] = tuple(args.window)
    if args.grid_step is not None:
        cfg["norm_grid_step"] = args.grid_step
    if args.jmax is not None:
        cfg["convergence_j_max"] = args.jmax
    if args.k is not None:
        cfg["k_levels"] = tuple(args.k)
    config = suite_config_from_dict(cfg)
    t0 = time.perf_counter()
    report = run_suite(config)
    elapsed = time.perf_counter() - t0
    print(report.table())
    print(f"elapsed: {elapsed:.1f} s", file=sys.stderr)
    out = args.out or "verify_report.json"
    _write_text(out, report.to_json())
    return 0 if report.passed else 1


def _cmd_norm(args) -> int:
    cfg = _load_config(args.config)
    f = _read_poly(args.infile)
    window = tuple(args.window) if args.window else tuple(cfg.get("norm_window", (0.0, 64.0)))
    step = args.grid_step if args.grid_step is not None else cfg.get("norm_grid_step", 0.5)
    est = stepanov_norm(f, args.p, window=window, grid_step=step)
    _write_text(args.out, json.dumps(est.to_json_dict(), sort_keys=True) + "\n")
    if args.profile_out:
        xs = np.arange(window[0], window[1] + 1e-12, step)
        if args.p == int(args.p) and int(args.p) % 2 == 0 and len(f):
            prof = window_profile(abs_power_poly(f, int(args.p)), xs)
        else:
            prof = np.array([window_integral(f, args.p, float(x)) for x in xs])
        lines = ["x,W"] + [f"{x:.17g},{w:.17g}" for x, w in zip(xs, prof)]
        _write_text(args.profile_out, "\n".join(lines) + "\n")
    return 0


def _cmd_transform(args) -> int:
    f = _read_poly(args.infile)
    mol = Mollifier()
    if args.op in ("Sj", "Rj") and args.j is None:
        raise ValueError(f"--op {args.op} requires --j")
    if args.op == "psik" and args.band is None:
        raise ValueError("--op psik requires --band")
    if args.op == "Sj":
        out = dyadic_partial_sum(f, args.j)
    elif args.op == "Rj":
        out = smoothed_partial_sum(f, args.j, mol)
    elif args.op == "H":
        out = hilbert_transform(f)
    elif args.op == "H+":
        out = hilbert_pm(f, "plus")
    elif args.op == "H-":
        out = hilbert_pm(f, "minus")
    else:
        out = lp_piece(f, args.band, mol)
    _write_text(args.out, json.dumps(to_json_dict(out), sort_keys=True) + "\n")
    if args.samples_out:
        lo, hi = args.window if args.window else (0.0, 10.0)
        step = args.grid_step if args.grid_step is not None else 0.01
        xs = np.arange(lo, hi + 1e-12, step)
        vals = evaluate(out, xs)
        lines = ["x,re,im"] + [
            f"{x:.17g},{v.real:.17g},{v.imag:.17g}" for x, v in zip(xs, vals)
        ]
        _write_text(args.samples_out, "\n".join(lines) + "\n")
    return 0


def _cmd_converge(args) -> int:
    j_hi = args.jmax if args.jmax is not None else 35
    lo, hi = args.window if args.window else (0.0, 10.0)
    curve = converge_experiment(args.N, (args.j_min, j_hi), (lo, hi, args.grid_points))
    _write_text(args.out, curve.csv_text())
    return 0


def _cmd_amalgam(args) -> int:
    table = amalgam_experiment(args.n_max, args.p_conj)
    _write_text(args.out, table.csv_text())
    print(f"fitted log-slope: {table.slope:.6f} (target 2/pi = {2.0 / math.pi:.6f})", file=sys.stderr)
    return 0


def _cmd_ensemble(args) -> int:
    cfg = _load_config(args.config)
    seed = _resolve_seed(args, cfg)
    spec = EnsembleSpec(
        seed=seed,
        count=args.count,
        terms=tuple(args.terms),
        alpha=args.alpha,
        freq_span=tuple(args.freq_span),
        coeff_scale=args.coeff_scale,
        real_valued=args.real_valued,
    )
    members = generate_ensemble(spec)
    payload = {
        "seed": seed,
        "spec": {
            "count": spec.count,
            "terms": list(spec.terms),
            "alpha": spec.alpha,
            "freq_span": list(spec.freq_span),
            "coeff_scale": spec.coeff_scale,
            "real_valued": spec.real_valued,
        },
        "polynomials": [to_json_dict(f) for f in members],
    }
    _write_text(args.out, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except (InfeasibleSpec, EmptyEnsemble, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"steplab: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
