"""Command-line front end.

Every subcommand prints one JSON document to stdout.  Exit status is 0 on
success, 2 for invalid input (including malformed JSON) and 3 when a
tolerance or resource limit could not be met.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import arithmetic, convergence, serialization, spectra, stieltjes, zeta_metric
from .errors import DomainError, ResourceError
from .series_core import evaluate, evaluate_derivative
from .svg import emit_svg

__all__ = ["build_parser", "run", "main", "emit_svg"]

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return _jsonable(z.real) if z.imag == 0 else [_jsonable(z.real), _jsonable(z.imag)]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


def _complex_arg(text: str):
    try:
        z = complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return z.real if z.imag == 0 else z


def _grid_arg(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list: {text!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_eval(args):
    d = serialization.load_series(args.series)
    if args.k:
        res = evaluate_derivative(d, args.s, args.k, args.tol)
    else:
        res = evaluate(d, args.s, args.tol)
    return {"value": res.value, "truncation_bound": res.truncation_bound,
            "terms_used": res.terms_used, "rigorous": res.rigorous,
            "converged": res.converged}


def _cmd_spectrum(args):
    x = serialization.load_spectrum_or_series(args.source)
    if isinstance(x, spectra.Spectrum):
        sp = x
        series = spectra.spectrum_to_series(sp)
    else:
        series = x
        ev = spectra.series_to_eigenvalues(series)
        lam, mult = np.unique(ev, return_counts=True)
        sp = spectra.Spectrum(lam, mult, dim=int(round(2 * series.abscissa)))
    head = args.head
    out = serialization.spectrum_to_dict(sp)
    out["eigenvalues"] = out["eigenvalues"][:head]
    out["multiplicities"] = out["multiplicities"][:head]
    out["stored"] = len(sp)
    out["abscissa"] = series.abscissa
    out["tail_model"] = (series.tail_model.to_dict() if series.tail_model is not None
                         else {"kind": "none"})
    if args.series_out:
        with open(args.series_out, "w") as fh:
            json.dump(_jsonable(serialization.series_to_dict(series)), fh)
    return out


def _cmd_distance_manifold(args):
    left = serialization.load_spectrum_or_series(args.left)
    right = serialization.load_spectrum_or_series(args.right)
    cfg = zeta_metric.MetricConfig(gamma=args.gamma, grid_points=args.grid)
    res = zeta_metric.manifold_distance(left, right, cfg)
    if args.emit_samples:
        _write_csv(args.emit_samples, ["s", "log_ratio"], res.samples.tolist())
    return {"value": res.value, "argmax_s": res.argmax_s,
            "error_estimate": res.error_estimate, "bounded": res.bounded}


def _cmd_distance_field(args):
    k1 = serialization.parse_field(args.left)
    k2 = serialization.parse_field(args.right)
    cfg = zeta_metric.MetricConfig(gamma=1.0, width=args.a, grid_points=args.grid,
                                   eval_tol=1e-11)
    if args.route == "euler":
        lower = args.lower if args.lower is not None else 1.0
        res = arithmetic.field_distance_euler(
            k1, k2, args.a, args.prime_bound,
            zeta_metric.MetricConfig(gamma=lower, width=1.0 + args.a - lower,
                                     grid_points=args.grid), lower)
    else:
        res = arithmetic.field_distance(k1, k2, args.a, cfg)
    return {"value": res.value, "argmax_s": res.argmax_s,
            "error_estimate": res.error_estimate, "route": args.route}


def _cmd_converge(args):
    fam = serialization.load_family(args.family)
    gamma = args.gamma if args.gamma is not None else fam.common_abscissa
    grid = args.grid or [gamma + 0.5, gamma + 1.0, gamma + 2.0]
    report = convergence.family_report(fam, grid, gamma, nu_max=args.nu_max)
    out = _jsonable(report.to_dict())
    out["s_grid"] = grid
    out["gamma"] = gamma
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(out, fh, indent=2)
    return out


def _cmd_perron(args):
    d = serialization.load_series(args.series)
    cfg = convergence.PerronConfig(c=args.c, T=args.T, quad_tol=args.tol)
    res = convergence.perron_sum(d, args.x, cfg)
    return {"value": res.value, "quad_error": res.quad_error,
            "near_exponent": res.near_exponent,
            "reference": convergence.perron_reference(d, args.x)}


def _cmd_primorial(args):
    rows = arithmetic.primorial_experiment(args.imax, tol=args.tol)
    table = [[r.i, r.d, r.discriminant, r.l_value, r.error_bound] for r in rows]
    if args.csv:
        _write_csv(args.csv, ["i", "D_i", "discriminant", "L_value", "error_bound"], table)
    if args.svg:
        emit_svg([(r.i, r.l_value) for r in rows], args.svg, x_label="i",
                 y_label="L(chi_D_i, 1)", title="L(chi, 1) at primorial discriminants")
    return {"rows": [{"i": r.i, "D_i": r.d, "discriminant": r.discriminant,
                      "L_value": r.l_value, "error_bound": r.error_bound} for r in rows]}


def _cmd_stieltjes_norms(args):
    d = serialization.load_series(args.series)
    step = stieltjes.step_from_series(d, args.shift)
    lip = stieltjes.lip_norm_estimate(step, args.omega, args.pair_budget,
                                      args.delta_min, args.seed)
    wid = stieltjes.wid_norm_estimate(d if args.shift == 0 else step,
                                      args.omega, args.kmax)
    return {name: {"value": est.value, "saturated": est.saturated,
                   "probes_used": est.probes_used, "argmax": list(est.argmax)}
            for name, est in (("lip", lip), ("wid", wid))}


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dirichlet-families",
                                description="Numerics for families of general Dirichlet series.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a series or its k-th derivative")
    e.add_argument("--series", required=True, help="series JSON or catalog:NAME")
    e.add_argument("--s", type=_complex_arg, required=True)
    e.add_argument("--k", type=int, default=0)
    e.add_argument("--tol", type=float, default=1e-12)
    e.set_defaults(func=_cmd_eval)

    s = sub.add_parser("spectrum", help="inspect a spectrum and its spectral series")
    s.add_argument("source", help="catalog:NAME, spectrum JSON or series JSON")
    s.add_argument("--head", type=_positive_int, default=10)
    s.add_argument("--series-out", help="write the spectral series as JSON")
    s.set_defaults(func=_cmd_spectrum)

    m = sub.add_parser("distance-manifold", help="spectral zeta distance")
    m.add_argument("--left", required=True)
    m.add_argument("--right", required=True)
    m.add_argument("--gamma", type=float, default=1.0)
    m.add_argument("--grid", type=_positive_int, default=64)
    m.add_argument("--emit-samples", help="CSV of (s, log_ratio)")
    m.set_defaults(func=_cmd_distance_manifold)

    f = sub.add_parser("distance-field", help="Dedekind zeta distance of quadratic fields")
    f.add_argument("--left", required=True, help="Q or Q(sqrt:d)")
    f.add_argument("--right", required=True)
    f.add_argument("--a", type=float, default=1.0)
    f.add_argument("--grid", type=_positive_int, default=32)
    f.add_argument("--route", choices=("l-ratio", "euler"), default="l-ratio")
    f.add_argument("--prime-bound", type=_positive_int, default=10_000)
    f.add_argument("--lower", type=float, help="left end for the Euler route")
    f.set_defaults(func=_cmd_distance_field)

    c = sub.add_parser("converge", help="convergence report for a family")
    c.add_argument("--family", required=True)
    c.add_argument("--gamma", type=float)
    c.add_argument("--grid", type=_grid_arg, help='comma-separated s values, e.g. "1.5,2,3"')
    c.add_argument("--nu-max", type=_positive_int, default=6)
    c.add_argument("--report", help="also write the report JSON here")
    c.set_defaults(func=_cmd_converge)

    q = sub.add_parser("perron", help="coefficient partial sum by Perron's formula")
    q.add_argument("--series", required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--c", type=float, default=1.0)
    q.add_argument("--T", type=float, default=1e4)
    q.add_argument("--tol", type=float, default=1e-6)
    q.set_defaults(func=_cmd_perron)

    r = sub.add_parser("primorial", help="L(chi_D, 1) at primorial D")
    r.add_argument("--imax", type=_positive_int, required=True)
    r.add_argument("--tol", type=float, default=1e-6)
    r.add_argument("--csv", help="CSV with columns i, D_i, discriminant, L_value, error_bound")
    r.add_argument("--svg", help="scatter plot of L_value against i")
    r.set_defaults(func=_cmd_primorial)

    n = sub.add_parser("stieltjes-norms", help="Lip / Wid seminorm estimates")
    n.add_argument("--series", required=True)
    n.add_argument("--omega", type=float, default=0.0)
    n.add_argument("--kmax", type=int, default=60)
    n.add_argument("--delta-min", type=float, default=1e-6)
    n.add_argument("--pair-budget", type=int, default=2000)
    n.add_argument("--shift", type=float, default=0.0)
    n.add_argument("--seed", type=int, default=0, help="seed for the random probe pairs")
    n.set_defaults(func=_cmd_stieltjes_norms)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the subcommand, print JSON; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        out = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    json.dump(_jsonable(out), stdout)
    stdout.write("\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
