"""Command-line interface.

Subcommands map one-to-one onto library operations: ``bounds`` prints the
precision-bound table for a probe, ``posterior`` writes posterior curves,
``gamma`` tabulates the posterior-to-Gaussian variance ratio against sample
count, ``ratio`` sweeps the optimal-variance ratio across squeezing, and
``experiment`` runs the seeded Monte Carlo harness.

All angles are radians.  Reports go to stdout or ``--output``; every report
subcommand can also render a figure with ``--plot``.  Exit codes: 0 success,
1 domain error, 2 flag/usage error.  When a subcommand samples and ``--seed``
is omitted, a generated seed is printed on stderr so the run can be replayed.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from contextlib import contextmanager

from .bayes import (
    DEFAULT_GRID_SIZE,
    asymptotic_posterior,
    posterior_from_batch,
    posterior_to_gaussian_ratio,
)
from .experiment import (
    ExperimentConfig,
    emit_csv,
    emit_json,
    log_m_grid,
    run_experiment,
)
from .fisher import NonIdentifiableError, bound_report, variance_ratio_vs_optimal
from .measurement import sample_homodyne
from .rng import child_seed

_BOUND_FIELDS = (
    ("fisher_homodyne", "fisher_h"),
    ("fisher_heterodyne", "fisher_d"),
    ("qfi", "qfi"),
    ("optimal_variance", "var_opt"),
    ("optimal_phase", "phi_h"),
    ("optimal_squeezing", "r_opt"),
)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


@contextmanager
def _open_output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write to {path!r}: {exc}") from exc
    with fh:
        yield fh


def _resolve_seed(given: int | None) -> int:
    if given is not None:
        return given
    seed = random.SystemRandom().getrandbits(63)
    print(f"seed = {seed}  (generated; pass --seed {seed} to replay)", file=sys.stderr)
    return seed


def _jsonable(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _add_output_flags(sub: argparse.ArgumentParser, with_plot: bool = True) -> None:
    sub.add_argument("--output", default="-", metavar="PATH",
                     help="report destination ('-' = stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    if with_plot:
        sub.add_argument("--plot", metavar="PATH", default=None,
                         help="also render a figure to this file")


def cmd_bounds(args: argparse.Namespace) -> int:
    report = bound_report(args.r, args.phi)
    with _open_output(args.output) as fh:
        if args.format == "json":
            doc = {"r": args.r, "phi": report.phi}
            doc.update((name, _jsonable(getattr(report, attr)))
                       for name, attr in _BOUND_FIELDS)
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        else:
            print(f"{'phi':<18} {report.phi:.6g}", file=fh)
            for name, attr in _BOUND_FIELDS:
                print(f"{name:<18} {getattr(report, attr):.6g}", file=fh)
    return 0


def cmd_posterior(args: argparse.Namespace) -> int:
    curves = []
    if args.asymptotic:
        for m in args.m:
            curves.append((m, asymptotic_posterior(args.r, args.phi_star, m, args.grid)))
    else:
        seed = _resolve_seed(args.seed)
        for m in args.m:
            batch = sample_homodyne(args.r, args.phi_star, m, child_seed(seed, m))
            curves.append((m, posterior_from_batch(batch, args.r, args.grid)))

    with _open_output(args.output) as fh:
        if args.format == "json":
            doc = {
                "r": args.r,
                "phi_star": args.phi_star,
                "curves": [
                    {
                        "m": m,
                        "mean": grid.mean,
                        "mode": grid.mode,
                        "variance": grid.variance,
                        "phi": grid.phis.tolist(),
                        "density": grid.density.tolist(),
                    }
                    for m, grid in curves
                ],
            }
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(("m", "phi", "density"))
            for m, grid in curves:
                for phi, dens in zip(grid.phis, grid.density):
                    writer.writerow((str(m), repr(float(phi)), repr(float(dens))))

    if args.plot:
        from . import plots

        plots.save_posterior_figure(curves, args.plot, phi_star=args.phi_star)
    return 0


def cmd_gamma(args: argparse.Namespace) -> int:
    ms = log_m_grid(args.m_min, args.m_max, args.m_points)
    series: dict[float, tuple[list[int], list[float]]] = {}
    for phi_star in args.phi_star:
        gammas = [posterior_to_gaussian_ratio(args.r, phi_star, m, args.grid) for m in ms]
        series[phi_star] = (list(ms), gammas)

    with _open_output(args.output) as fh:
        if args.format == "json":
            doc = {
                "r": args.r,
                "series": [
                    {"phi_star": phi_star, "m": ms_, "gamma": gs}
                    for phi_star, (ms_, gs) in series.items()
                ],
            }
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(("phi_star", "m", "gamma"))
            for phi_star, (ms_, gs) in series.items():
                for m, g in zip(ms_, gs):
                    writer.writerow((repr(float(phi_star)), str(m), repr(float(g))))

    if args.plot:
        from . import plots

        plots.save_gamma_figure(series, args.plot)
    return 0


def cmd_ratio(args: argparse.Namespace) -> int:
    if args.r_points < 2 or not args.r_min < args.r_max:
        raise ValueError("need r_min < r_max and at least two sweep points")
    step = (args.r_max - args.r_min) / (args.r_points - 1)
    rs = [args.r_min + i * step for i in range(args.r_points)]
    ratios = [variance_ratio_vs_optimal(r, args.phi_star, args.m) for r in rs]

    with _open_output(args.output) as fh:
        if args.format == "json":
            doc = {"phi_star": args.phi_star, "m": args.m, "r": rs, "ratio": ratios}
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(("r", "ratio"))
            for r, ratio in zip(rs, ratios):
                writer.writerow((repr(float(r)), repr(float(ratio))))

    if args.plot:
        from . import plots

        plots.save_ratio_figure(rs, ratios, args.plot)
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    m_values = args.m_values if args.m_values else log_m_grid(
        args.m_min, args.m_max, args.m_points)
    seed = _resolve_seed(args.seed)
    config = ExperimentConfig(
        r=args.r,
        phi_star=args.phi_star,
        m_values=tuple(m_values),
        repetitions=args.reps,
        scheme=args.scheme,
        seed=seed,
        grid_size=args.grid,
        n_rough=args.n_rough,
    )
    result = run_experiment(config)

    with _open_output(args.output) as fh:
        if args.format == "json":
            emit_json(result, fh)
        else:
            emit_csv(result, fh)

    if args.plot:
        from . import plots

        plots.save_experiment_figure(result, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homodyne-bayes",
        description="Bayesian phase estimation toolkit for squeezed-vacuum "
                    "homodyne interferometry (all angles in radians).",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("bounds", help="precision-bound table for one probe")
    p.add_argument("--r", type=float, required=True, help="squeezing strength")
    p.add_argument("--phi", type=float, default=None,
                   help="phase (default: the optimal phase for r)")
    _add_output_flags(p, with_plot=False)
    p.set_defaults(handler=cmd_bounds)

    p = subs.add_parser("posterior", help="posterior curves for several sample counts")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi-star", type=float, default=0.3, help="true phase (rad)")
    p.add_argument("--m", type=_int_list, default=[10, 50, 100],
                   help="comma-separated sample counts")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID_SIZE)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--seed", type=int, default=None, help="sample with this seed")
    mode.add_argument("--asymptotic", action="store_true",
                      help="expected posterior instead of sampled data")
    _add_output_flags(p)
    p.set_defaults(handler=cmd_posterior)

    p = subs.add_parser("gamma", help="posterior/Gaussian variance ratio vs sample count")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi-star", type=_float_list, default=[0.3, 0.6, 0.9],
                   help="comma-separated true phases")
    p.add_argument("--m-min", type=int, default=10)
    p.add_argument("--m-max", type=int, default=1000)
    p.add_argument("--m-points", type=int, default=13)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID_SIZE)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_gamma)

    p = subs.add_parser("ratio", help="variance ratio vs optimal across squeezing")
    p.add_argument("--phi-star", type=float, default=0.3)
    p.add_argument("--m", type=int, default=1, help="sample count label")
    p.add_argument("--r-min", type=float, default=0.05)
    p.add_argument("--r-max", type=float, default=1.5)
    p.add_argument("--r-points", type=int, default=146)
    _add_output_flags(p)
    p.set_defaults(handler=cmd_ratio)

    p = subs.add_parser("experiment", help="seeded Monte Carlo sweep over budgets")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi-star", type=float, required=True)
    p.add_argument("--scheme", choices=("none", "squeeze", "phase"), default="phase")
    p.add_argument("--m-values", type=_int_list, default=None,
                   help="explicit comma-separated budgets (overrides the range flags)")
    p.add_argument("--m-min", type=int, default=16)
    p.add_argument("--m-max", type=int, default=2048)
    p.add_argument("--m-points", type=int, default=8)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID_SIZE)
    p.add_argument("--n-rough", type=int, default=None,
                   help="fixed rough-stage size (default: floor(3*sqrt(M)))")
    _add_output_flags(p)
    p.set_defaults(handler=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (NonIdentifiableError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
