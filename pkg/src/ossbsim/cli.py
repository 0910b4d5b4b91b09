"""Command-line front end: ``ossbsim {spectrum,hom,dip,sweep,optimize,reproduce}``.

Exit codes: 0 success, 2 usage/configuration error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import reproduce as repro
from ._errors import DomainError
from .hom import HomParams, dip_curve, fit_visibility, noisy_visibility, visibility, DipCurve
from .io import (
    ConfigError,
    config_from_modulator,
    hom_from_config,
    load_config,
    modulator_from_config,
    validate,
    write_csv,
    write_json,
)
from .optimize import maximize_conversion, trim_biases
from .presets import SIGMA_STAR
from .sideband import (
    ModulatorConfig,
    conversion_efficiency,
    default_n_max,
    ossb_compose,
    suppression_ratio_db,
    POWER_FLOOR,
)

EXIT_USAGE = 2
EXIT_IO = 3

MOD_FLAGS = ("m", "f_m", "insertion_loss_db", "n_max")
HOM_FLAGS = ("sigma_s", "sigma_i", "delta", "car")


class UsageError(Exception):
    pass


def _merge(args, kind, flags):
    data = load_config(args.config, kind) if args.config else {}
    for name in flags:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    return validate(data, kind)


def _emit(args, header, rows, extra=None):
    if args.format == "json":
        payload = dict(extra or {})
        payload["columns"] = header
        payload["rows"] = [list(r) for r in rows]
        write_json(payload, args.out)
    else:
        write_csv(rows, header, args.out)


def _delays(args):
    if args.delay_steps < 5:
        raise UsageError("--delay-steps must be >= 5")
    return np.linspace(args.delay_min, args.delay_max, args.delay_steps)


def cmd_spectrum(args):
    clean = _merge(args, "modulator", MOD_FLAGS)
    cfg = modulator_from_config(clean)
    n_max = clean.get("n_max", default_n_max(cfg.m))
    spec = ossb_compose(cfg, n_max)
    try:
        supp = suppression_ratio_db(spec, args.order)
    except DomainError:
        supp = math.nan
    rows = []
    for order, amp in spec.items():
        power = abs(amp) ** 2
        if power <= POWER_FLOOR:
            continue
        rows.append([order, order * cfg.f_m, amp.real, amp.imag, power,
                     10.0 * math.log10(power), supp])
    if not rows:
        print("warning: spectrum carries no power above the floor", file=sys.stderr)
    header = ["order", "frequency_offset_ghz", "amplitude_re", "amplitude_im",
              "power", "power_db", "suppression_db"]
    _emit(args, header, rows, {"config": config_from_modulator(cfg, n_max),
                               "target_order": args.order, "suppression_db": supp})


def _hom_params(args):
    return hom_from_config(_merge(args, "hom", HOM_FLAGS))


def cmd_hom(args):
    p = _hom_params(args)
    delays = _delays(args)
    from .hom import coincidence_rate
    raw = coincidence_rate(delays, p)
    v = visibility(p)
    vn = noisy_visibility(v, p.car) if p.car is not None else math.nan
    rows = [[d, r, r / 0.5, v, vn] for d, r in zip(delays.tolist(), raw.tolist())]
    header = ["delay_ps", "coincidence_rate", "normalized_coincidence", "visibility", "noisy_visibility"]
    _emit(args, header, rows, {"visibility": v, "noisy_visibility": vn})


def cmd_dip(args):
    p = _hom_params(args)
    curve = dip_curve(p, _delays(args), apply_noise=args.noise)
    if args.sample_noise > 0:
        rng = np.random.default_rng(args.seed)
        noisy = curve.coincidences + rng.normal(0.0, args.sample_noise, len(curve))
        curve = DipCurve(curve.delays, noisy)
    fit = fit_visibility(curve)
    curve.fit = fit
    rows = [[d, c, fit.visibility, fit.center, fit.width, fit.residual] for d, c in curve.rows()]
    header = ["delay_ps", "normalized_coincidence", "fit_visibility", "fit_center_ps",
              "fit_width_ps", "fit_rms_residual"]
    _emit(args, header, rows, {"fit": {"visibility": fit.visibility, "center_ps": fit.center,
                                       "width_ps": fit.width, "rms_residual": fit.residual,
                                       "converged": fit.converged, "message": fit.message}})


SWEEP_METRICS = ("efficiency", "suppression", "visibility", "noisy_visibility")


def _sweep_point(args, x):
    vals = {"m": args.m, "f_m": args.f_m, "delta": args.delta, "car": args.car}
    vals[args.axis] = x
    if args.axis == "f_m":
        # the modulator shift sets the residual detuning between the photons
        vals["delta"] = abs(args.separation - x)
    out = [x]
    spec = None
    for metric in args.metrics:
        if metric in ("efficiency", "suppression") and spec is None:
            spec = ossb_compose(ModulatorConfig(vals["m"], vals["f_m"]))
        if metric == "efficiency":
            out.append(conversion_efficiency(spec, args.order))
        elif metric == "suppression":
            try:
                out.append(suppression_ratio_db(spec, args.order))
            except DomainError:
                out.append(math.nan)
        else:
            v = visibility(HomParams(args.sigma_s, args.sigma_i, vals["delta"]))
            out.append(v if metric == "visibility" else noisy_visibility(v, vals["car"]))
    return out


def cmd_sweep(args):
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    if not args.start < args.stop:
        raise UsageError(f"empty range [{args.start}, {args.stop}]")
    for metric in args.metrics:
        if metric not in SWEEP_METRICS:
            raise UsageError(f"unknown metric {metric!r}; choose from {', '.join(SWEEP_METRICS)}")
    grid = np.linspace(args.start, args.stop, args.steps).tolist()
    with ThreadPoolExecutor(max_workers=max(args.jobs, 1)) as pool:
        rows = list(pool.map(lambda x: _sweep_point(args, x), grid))
    _emit(args, [args.axis, *args.metrics], rows, {"axis": args.axis})


def cmd_optimize(args):
    if args.mode == "conversion":
        res = maximize_conversion(args.order, (args.lo, args.hi), args.tol)
        header = ["m", "efficiency", "iterations", "converged", "bracket_width", "message"]
        rows = [[res.x, res.value, res.iterations, res.converged, res.tolerance, res.message]]
    else:
        clean = _merge(args, "modulator", MOD_FLAGS)
        cfg = modulator_from_config(clean)
        res = trim_biases(cfg, args.objective, args.order, args.tol, args.max_iter)
        header = ["branch", "alpha", "theta", "objective", "sweeps", "converged", "message"]
        rows = [[k, a, t, res.value, res.iterations, res.converged, res.message]
                for k, (a, t) in enumerate(res.x.biases)]
    _emit(args, header, rows)


def _print_table(header, rows):
    from .io import fmt
    print(" | ".join(header))
    for row in rows:
        print(" | ".join(f"{v:.6g}" if isinstance(v, float) else fmt(v) for v in row))


def cmd_reproduce(args):
    targets = repro.TARGETS if args.target == "all" else (args.target,)
    os.makedirs(args.outdir, exist_ok=True)
    for target in targets:
        datasets, (header, rows) = repro.run(target)
        for stem, (dh, drows) in datasets.items():
            write_csv(drows, dh, os.path.join(args.outdir, f"{stem}.csv"))
        write_csv(rows, header, os.path.join(args.outdir, f"{target}_summary.csv"))
        print(f"== {target} ==")
        _print_table(header, rows)


def _add_common(p):
    p.add_argument("--config", help="flat JSON configuration file")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_modulator_flags(p):
    p.add_argument("--m", type=float, help="modulation index")
    p.add_argument("--f_m", type=float, help="RF frequency (GHz)")
    p.add_argument("--insertion_loss_db", type=float)
    p.add_argument("--n_max", type=int, help="sideband truncation order")
    p.add_argument("--order", type=int, default=-1, help="target sideband order")


def _add_hom_flags(p):
    p.add_argument("--sigma_s", type=float, help="signal width (GHz)")
    p.add_argument("--sigma_i", type=float, help="idler width (GHz)")
    p.add_argument("--delta", type=float, help="centre-frequency difference (GHz)")
    p.add_argument("--car", type=float, help="coincidence-to-accidental ratio")
    p.add_argument("--delay-min", type=float, default=-100.0)
    p.add_argument("--delay-max", type=float, default=100.0)
    p.add_argument("--delay-steps", type=int, default=201)


def build_parser():
    parser = argparse.ArgumentParser(prog="ossbsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="sideband spectrum of the modulator")
    _add_common(p)
    _add_modulator_flags(p)
    p.set_defaults(func=cmd_spectrum)

    for name, func, text in (("hom", cmd_hom, "closed-form dip and visibility"),
                             ("dip", cmd_dip, "sampled dip curve with visibility fit")):
        p = sub.add_parser(name, help=text)
        _add_common(p)
        _add_hom_flags(p)
        if name == "dip":
            p.add_argument("--noise", action="store_true", help="apply the CAR accidental floor")
            p.add_argument("--sample-noise", type=float, default=0.0, help="additive Gaussian sd")
            p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)

    p = sub.add_parser("sweep", help="metrics over a parameter grid")
    _add_common(p)
    p.add_argument("--axis", choices=("m", "delta", "f_m", "car"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--metrics", type=lambda s: [t.strip() for t in s.split(",") if t.strip()],
                   default=["efficiency"])
    p.add_argument("--m", type=float, default=0.54)
    p.add_argument("--f_m", type=float, default=25.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--car", type=float, default=70.0)
    p.add_argument("--sigma_s", type=float, default=SIGMA_STAR)
    p.add_argument("--sigma_i", type=float, default=SIGMA_STAR)
    p.add_argument("--separation", type=float, default=25.0,
                   help="photon centre separation before shifting, used for the f_m axis (GHz)")
    p.add_argument("--order", type=int, default=-1)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="drive-level search or bias trimming")
    _add_common(p)
    p.add_argument("mode", choices=("conversion", "trim"))
    _add_modulator_flags(p)
    p.add_argument("--lo", type=float, default=0.5)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--objective", choices=("suppression", "efficiency"), default="suppression")
    p.add_argument("--max_iter", type=int, default=50)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", help="reports against published values")
    p.add_argument("target", choices=(*repro.TARGETS, "all"))
    p.add_argument("--outdir", default="reproduce_out")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            args.func(args)
    except (ConfigError, UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
