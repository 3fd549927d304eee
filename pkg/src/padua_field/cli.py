"""``padua-field`` command line: points, field, interp, diagnose, bench."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys

import numpy as np

from . import bench, lsq
from .errors import ExperimentFailure
from .fields import FIELD_KINDS, make_field
from .interpolation import PaduaSamples, interpolate_kernel
from .io import FORMATS, read_csv, write_output
from .points import (
    data_grid,
    padua_points_curve,
    padua_points_grid,
    regular_sensor_grid,
    standard_assignment,
)
from .rbf import DEFAULT_RIDGE, rbf_eval, rbf_fit

SEED_ENV = "PADUA_FIELD_SEED"


def _int_at_least(lo, name):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}")
        if value < lo:
            raise argparse.ArgumentTypeError(f"{name} must be >= {lo}, got {value}")
        return value

    return parse


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_output(p):
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padua-field",
        description="Padua-point field reconstruction, baselines and benchmarks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("points", help="emit sensor or data-qubit point sets")
    p.add_argument("--kind", choices=("padua", "regular", "standard", "data"), default="padua")
    p.add_argument("--order", type=_int_at_least(1, "order"))
    p.add_argument("--construction", choices=("grid", "curve"), default="grid")
    p.add_argument("--d", type=_int_at_least(2, "d"))
    p.add_argument("--remove-overlaps", action="store_true")
    p.add_argument("--orientation", type=int, choices=range(4), default=0)
    p.add_argument("--rows", type=_int_at_least(2, "rows"), default=5)
    p.add_argument("--cols", type=_int_at_least(2, "cols"), default=5)
    _add_output(p)

    p = sub.add_parser("field", help="tabulate a true field on a grid")
    p.add_argument("--kind", choices=FIELD_KINDS, default="polynomial")
    p.add_argument("--degree", type=_int_at_least(0, "degree"), default=3)
    p.add_argument("--seed", type=int)
    p.add_argument("--resolution", type=_int_at_least(2, "resolution"), default=5)
    _add_output(p)

    p = sub.add_parser("interp", help="reconstruct a field from sample values")
    p.add_argument("--samples", required=True, help="CSV with columns x, y, value")
    p.add_argument("--method", choices=("padua", "rbf"), default="padua")
    p.add_argument("--resolution", type=_int_at_least(2, "resolution"), default=5)
    p.add_argument("--rbf-shape", type=float)
    p.add_argument("--rbf-ridge", type=float, default=DEFAULT_RIDGE)
    _add_output(p)

    p = sub.add_parser("diagnose", help="conditioning, Lebesgue and perturbation diagnostics")
    p.add_argument("--order", type=_int_at_least(1, "order"), required=True)
    p.add_argument("--what", choices=("condition", "lebesgue", "gram", "perturb"), required=True)
    p.add_argument("--resolution", type=_int_at_least(50, "resolution"), default=201)
    p.add_argument("--norm", choices=("2", "inf"), default="2")
    p.add_argument("--eps", type=_float_list, default=[0.0, 1e-4, 1e-3, 1e-2])
    p.add_argument("--field", choices=FIELD_KINDS, default="franke")
    p.add_argument("--seed", type=int)
    p.add_argument("--seeds", type=_int_at_least(1, "seeds"), default=1)
    _add_output(p)

    p = sub.add_parser("bench", help="run mapping-error experiments")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=bench.PRESETS)
    src.add_argument("--config", help="JSON file: one ExperimentConfig object or a list")
    p.add_argument("--trials", type=_int_at_least(1, "trials"))
    p.add_argument("--shots", type=_int_at_least(1, "shots"))
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=_int_at_least(1, "threads"), default=1)
    p.add_argument("--noiseless", action="store_true", help="use exact field values at sensors")
    p.add_argument("--timing", action="store_true", help="fill the wall_ms column")
    _add_output(p)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    """Parse and validate a command line; usage problems exit with status 2."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "points":
        if args.kind == "padua" and args.order is None:
            parser.error("points --kind padua requires --order")
        if args.kind == "regular" and args.d is None:
            parser.error("points --kind regular requires --d")
    args.seed_given = getattr(args, "seed", None) is not None or SEED_ENV in os.environ
    if getattr(args, "seed", "absent") is None:
        env = os.environ.get(SEED_ENV)
        if env is not None:
            try:
                args.seed = int(env)
            except ValueError:
                parser.error(f"{SEED_ENV} must be an integer, got {env!r}")
        else:
            args.seed = 0
    return args


def _grid(resolution):
    g = np.linspace(-1.0, 1.0, resolution)
    X, Y = np.meshgrid(g, g)
    return np.column_stack([X.ravel(), Y.ravel()])


def _cmd_points(args):
    if args.kind == "padua":
        build = padua_points_grid if args.construction == "grid" else padua_points_curve
        pset = build(args.order)
        return [
            {"x": float(p[0]), "y": float(p[1]), "class": c, "weight": float(w)}
            for p, c, w in zip(pset.points, pset.classes, pset.weights)
        ]
    data = data_grid(args.rows, args.cols)
    if args.kind == "data":
        pts, label = data, "data"
    elif args.kind == "regular":
        pts, label = regular_sensor_grid(args.d, data, args.remove_overlaps).points, "sensor"
    else:
        pts, label = standard_assignment(data, args.orientation).sensors, "sensor"
    return [{"x": float(p[0]), "y": float(p[1]), "class": label, "weight": ""} for p in pts]


def _cmd_field(args):
    fld = make_field(args.kind, args.degree, args.seed)
    pts = _grid(args.resolution)
    return [{"x": float(p[0]), "y": float(p[1]), "value": float(v)} for p, v in zip(pts, fld(pts))]


def _cmd_interp(args):
    table = read_csv(args.samples)
    missing = {"x", "y", "value"} - set(table[0] if table else {})
    if missing:
        raise ValueError(f"samples CSV lacks columns: {sorted(missing)}")
    pts = np.array([[float(r["x"]), float(r["y"])] for r in table])
    vals = np.array([float(r["value"]) for r in table])
    targets = _grid(args.resolution)
    if args.method == "padua":
        est = interpolate_kernel(PaduaSamples.from_points(pts, vals), targets)
    else:
        est = rbf_eval(rbf_fit(pts, vals, args.rbf_shape, args.rbf_ridge), targets)
    return [{"x": float(p[0]), "y": float(p[1]), "value": float(v)} for p, v in zip(targets, est)]


def _cmd_diagnose(args):
    k = args.order
    if args.what == "condition":
        norm = 2 if args.norm == "2" else np.inf
        pset = padua_points_grid(k)
        rows = []
        for kind, weights in (("chebyshev", np.sqrt(pset.weights)), ("monomial", None)):
            V = lsq.weighted_vandermonde(lsq.BasisSpec(kind, k), pset.points, weights)
            rows.append({"order": k, "basis": kind, "norm": args.norm, "eta": lsq.condition_number(V, norm)})
        return rows
    if args.what == "lebesgue":
        est = lsq.lebesgue_estimate(k, args.resolution)
        return [{"order": k, "resolution": est.grid_resolution, "lebesgue": est.value}]
    if args.what == "gram":
        G = lsq.gram_orthonormality(lsq.padua_vandermonde(k))
        return [{"i": i, "j": j, "value": float(G[i, j])} for i in range(len(G)) for j in range(len(G))]
    fld = make_field(args.field, 1, args.seed)
    rows = []
    for s in range(args.seed, args.seed + args.seeds):
        rows += lsq.perturbation_sweep(k, args.eps, fld, s)
    return rows


def _cmd_bench(args):
    if args.preset:
        configs = bench.preset(args.preset, seed=args.seed)
    else:
        with open(args.config) as fh:
            payload = json.load(fh)
        payload = payload if isinstance(payload, list) else [payload]
        configs = [bench.ExperimentConfig.from_dict(d) for d in payload]
    overrides = {}
    if args.config and args.seed_given:
        overrides["seed"] = args.seed
    if args.trials:
        overrides["trials"] = args.trials
    if args.shots:
        overrides["shots"] = args.shots
    if args.noiseless:
        overrides["noiseless"] = True
    if overrides:
        configs = [dataclasses.replace(c, **overrides) for c in configs]
    results = bench.run_experiments(configs, threads=args.threads)
    return [bench.result_row(r, timing=args.timing) for r in results]


_COMMANDS = {
    "points": (_cmd_points, ("x", "y", "class", "weight")),
    "field": (_cmd_field, ("x", "y", "value")),
    "interp": (_cmd_interp, ("x", "y", "value")),
    "diagnose": (_cmd_diagnose, None),
    "bench": (_cmd_bench, bench.CSV_COLUMNS),
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    handler, columns = _COMMANDS[args.command]
    try:
        rows = handler(args)
        write_output(rows, args.format, args.out, columns)
    except (ValueError, KeyError, OSError, ArithmeticError, ExperimentFailure) as exc:
        print(f"padua-field {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
