"""Command-line entry point.

Usage: ``geo <subcommand> --config file.json [--jobs K] [--allow-failures]
[--seed S]``.  Subcommands mirror the experiment tags (dashes for
underscores).  The ``GEO_LOG`` environment variable sets log verbosity
(DEBUG, INFO, WARNING, ERROR; default WARNING).

Exit codes: 0 all solves converged (or --allow-failures), 1 some solve
failed, 2 configuration or input-file errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .experiments import EXPERIMENTS, ConfigError, ExperimentConfig, run_experiment


def _setup_logging():
    level_name = os.environ.get("GEO_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="geo",
        description="Geodesics on data-driven Riemannian manifolds "
        "via a fixed-point boundary-value solver.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for tag in EXPERIMENTS:
        name = tag.replace("_", "-")
        p = sub.add_parser(name, help=f"run a {name} experiment")
        p.add_argument("--config", required=True, help="experiment JSON file")
        p.add_argument("--jobs", type=int, default=1, metavar="K",
                       help="parallel solves (default 1)")
        p.add_argument("--allow-failures", action="store_true",
                       help="exit 0 even when some solves do not converge")
        p.add_argument("--seed", type=int, default=None, metavar="S",
                       help="override the pair-sampling seed")
        p.set_defaults(experiment=tag)
    return parser


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = ExperimentConfig.from_file(args.config, expected=args.experiment)
        return run_experiment(
            config,
            jobs=args.jobs,
            allow_failures=args.allow_failures,
            seed=args.seed,
        )
    except ConfigError as err:
        print(f"geo: config error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"geo: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
