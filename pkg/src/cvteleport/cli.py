"""Command-line front end.

Subcommands reproduce each figure-style dataset as CSV plus a key=value
summary block on stdout; ``check`` runs the acceptance suite.  Exit
codes: 0 success, 1 acceptance/validation failure, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import acceptance, experiments
from .experiments import ExperimentConfig, default_lambda_grid, load_config_file

_RUNNERS = {
    "fig1": experiments.run_fig1,
    "fig3": experiments.run_fig3,
    "gaussian": experiments.run_gaussian_alphabet,
    "circle-vs-line": experiments.run_circle_vs_line,
}

_DEFAULTS = {
    "lambda_points": experiments.DEFAULT_LAMBDA_POINTS,
    "samples": experiments.DEFAULT_SAMPLES,
    "seed": experiments.DEFAULT_SEED,
    "alpha": experiments.DEFAULT_ALPHA,
    "s": experiments.DEFAULT_S,
    "tol": experiments.DEFAULT_TOL,
    "threads": 1,
}

_PARSERS = {
    "lambda_points": int,
    "samples": int,
    "seed": int,
    "alpha": float,
    "s": float,
    "out": str,
    "tol": float,
    "threads": int,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda-points", type=int, default=None, metavar="N",
                        help="uniform grid points on [0, 0.98] (plus the 0.999 cap)")
    common.add_argument("--samples", type=int, default=None, metavar="N",
                        help="Monte Carlo samples per grid point")
    common.add_argument("--seed", type=int, default=None, metavar="U64",
                        help="base seed; per-point seeds are seed XOR point index")
    common.add_argument("--alpha", type=float, default=None, metavar="X",
                        help="target amplitude for the line/circle curves")
    common.add_argument("--out", type=str, default=None, metavar="PATH",
                        help="output CSV path (default <command>.csv)")
    common.add_argument("--tol", type=float, default=None, metavar="X",
                        help="optimizer abscissa tolerance")
    common.add_argument("--config", type=str, default=None, metavar="PATH",
                        help="key = value config file; CLI flags take precedence")
    common.add_argument("--threads", type=int, default=None, metavar="N",
                        help="worker threads across grid points")

    parser = argparse.ArgumentParser(
        prog="cvteleport",
        description="Tailored continuous-variable teleportation curves and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fig1", parents=[common],
                   help="line-tailored displacement curve vs the standard scheme")
    sub.add_parser("fig3", parents=[common],
                   help="full tailoring, displacement-only and standard curves")
    gaussian = sub.add_parser("gaussian", parents=[common],
                              help="gain-optimised fidelity for a Gaussian alphabet")
    gaussian.add_argument("--s", type=float, default=None, metavar="X",
                          help="alphabet standard deviation")
    sub.add_parser("circle-vs-line", parents=[common],
                   help="Monte Carlo comparison of circle and line strategies")
    sub.add_parser("check", help="run the acceptance suite; nonzero exit on failure")
    return parser


def _merge_settings(args: argparse.Namespace) -> dict:
    settings = dict(_DEFAULTS)
    settings["out"] = f"{args.command}.csv"
    if args.config is not None:
        raw = load_config_file(Path(args.config))
        for key, text in raw.items():
            try:
                settings[key] = _PARSERS[key](text)
            except ValueError as exc:
                raise ValueError(f"config key {key!r}: {exc}") from exc
    for key in _PARSERS:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            settings[key] = cli_value
    return settings


def _run_check() -> int:
    results = acceptance.run_all()
    for res in results:
        print(acceptance.format_line(res))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} acceptance criteria passed")
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "check":
        return _run_check()

    try:
        settings = _merge_settings(args)
        config = ExperimentConfig(
            lambda_grid=default_lambda_grid(settings["lambda_points"]),
            n_samples=settings["samples"],
            seed=settings["seed"],
            alpha_line=settings["alpha"],
            s=settings["s"],
            output_path=Path(settings["out"]),
            tol=settings["tol"],
            threads=settings["threads"],
        )
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        result = _RUNNERS[args.command](config)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 3

    print(f"wrote {result.output_path} ({len(result.rows)} rows)")
    for key, value in result.summary.items():
        print(f"{key}={format(value, '.9g')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
