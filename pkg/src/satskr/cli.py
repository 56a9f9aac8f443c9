"""Command-line surface.

Four subcommands, all driven by the flat key=value config format:

* ``skr rate -c FILE`` — evaluate one operating point, print the bounds.
* ``skr sweep -c FILE [-o OUT.csv]`` — run a declared sweep; CSV to file
  or stdout.
* ``skr optimize -c FILE`` — optimize input power at one operating point.
* ``skr figure ID -o DIR`` — regenerate a preset curve family, one CSV
  per curve named ``ID_curveN.csv`` with the generating config embedded
  as ``#`` comments.

Exit codes: 0 success, 1 sweep completed but some rows carry error
flags, 2 invalid configuration or arguments.
"""
from __future__ import annotations

import argparse
import os
import sys

from .config import ConfigError, RunConfig, parse_config, serialize_sweep
from .csvio import emit_csv, format_value, render_csv
from .presets import FIGURE_IDS, figure_curves
from .rates import RateParams, rate_point
from .sweeps import (
    SweepValidationError,
    channel_at,
    optimize_mu_for_channel,
    run_sweep,
)

EXIT_OK = 0
EXIT_FLAGGED = 1
EXIT_INVALID = 2


def _load(path: str) -> RunConfig:
    with open(path) as handle:
        return parse_config(handle.read())


def _require_mode(cfg: RunConfig, mode: str) -> None:
    if cfg.mode != mode:
        raise ConfigError([f"config is for mode '{cfg.mode}', expected '{mode}'"])


def _cmd_rate(args) -> int:
    cfg = _load(args.config)
    _require_mode(cfg, "rate")
    fixed = cfg.fixed
    channel = channel_at(fixed)
    result = rate_point(
        RateParams(
            mu=fixed.mu,
            channel=channel,
            beta=fixed.beta,
            eve_noise_model=fixed.eve_noise_model,
        )
    )
    for name, value in (
        ("eta", channel.eta),
        ("kappa", channel.kappa),
        ("n_e", channel.n_e),
        ("lb_direct", result.lb_direct),
        ("lb_reverse", result.lb_reverse),
        ("lb_best", result.lb_best),
        ("ub", result.ub),
    ):
        print(f"{name} = {format_value(value)}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load(args.config)
    _require_mode(cfg, "sweep")
    out = args.output or cfg.output_path
    table = run_sweep(cfg.sweep)
    if out:
        emit_csv(table, out)
    else:
        sys.stdout.write(render_csv(table))
    return EXIT_FLAGGED if table.has_errors else EXIT_OK


def _cmd_optimize(args) -> int:
    cfg = _load(args.config)
    _require_mode(cfg, "optimize")
    fixed = cfg.fixed
    channel = channel_at(fixed)
    report = optimize_mu_for_channel(
        channel,
        scheme=cfg.scheme,
        beta=fixed.beta,
        eve_noise_model=fixed.eve_noise_model,
    )
    print(f"mu_star = {format_value(report.mu_star)}")
    print(f"rate = {format_value(report.rate_at_star)}")
    print(f"unbounded = {'true' if report.unbounded else 'false'}")
    return EXIT_OK


def _comment_block(figure_id, index, total, label, spec) -> str:
    lines = [
        f"# {figure_id} curve {index} of {total}",
        f"# label: {label}",
    ]
    lines.extend("# " + line for line in serialize_sweep(spec).splitlines())
    return "\n".join(lines) + "\n"


def _cmd_figure(args) -> int:
    curves = figure_curves(args.id)
    os.makedirs(args.out, exist_ok=True)
    flagged = False
    for index, (label, spec) in enumerate(curves, start=1):
        table = run_sweep(spec)
        flagged = flagged or table.has_errors
        path = os.path.join(args.out, f"{args.id}_curve{index}.csv")
        with open(path, "w", newline="\n") as handle:
            handle.write(_comment_block(args.id, index, len(curves), label, spec))
            handle.write(render_csv(table))
        print(f"wrote {path}")
    return EXIT_FLAGGED if flagged else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skr",
        description="Secret-key-rate bounds for free-space wiretap channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rate = sub.add_parser("rate", help="evaluate bounds at one operating point")
    rate.add_argument("-c", "--config", required=True, help="key=value config file")
    rate.set_defaults(func=_cmd_rate)

    sweep = sub.add_parser("sweep", help="run a declared 1-D sweep")
    sweep.add_argument("-c", "--config", required=True, help="key=value config file")
    sweep.add_argument("-o", "--output", help="CSV path (default: stdout)")
    sweep.set_defaults(func=_cmd_sweep)

    optimize = sub.add_parser("optimize", help="optimize input power at one point")
    optimize.add_argument("-c", "--config", required=True, help="key=value config file")
    optimize.set_defaults(func=_cmd_optimize)

    figure = sub.add_parser("figure", help="regenerate a preset curve family")
    figure.add_argument("id", choices=FIGURE_IDS, help="preset identifier")
    figure.add_argument("-o", "--out", default=".", help="output directory")
    figure.set_defaults(func=_cmd_figure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SweepValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
