"""Command-line driver: one subcommand per catalog experiment.

Examples
--------
    denospec list --json
    denospec fig2 --seed 7 --out results/
    denospec fig7 --allow-large --threads 2
    denospec fig5-hist --t 0.1 --m 2 --L 5

Flags override the catalog defaults; sweep axes collapse to the single
given value.  The output directory can also be set through the
DENOSPEC_OUT environment variable (the --out flag wins).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .errors import NonInvertibleChannelError
from .experiments import (
    CATALOG,
    ConfigError,
    ExperimentError,
    catalog_as_dict,
    run_experiment,
)

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denospec",
        description="Sample random noisy circuits, compute denoisers, emit spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    list_parser = sub.add_parser("list", help="show the experiment catalog")
    list_parser.add_argument("--json", action="store_true", help="machine-readable catalog")
    for name, entry in CATALOG.items():
        p = sub.add_parser(name, help=entry.description)
        p.add_argument("--L", type=int, default=None, help="qubit count (N = 2^L)")
        p.add_argument("--m", type=int, default=None, help="layer count")
        p.add_argument("--t", type=float, default=None, help="noise time in [0, 1]")
        p.add_argument("--kmax", type=int, default=None, help="maximal Pauli weight")
        p.add_argument("--ensemble", type=int, default=None, help="ensemble size")
        p.add_argument("--seed", type=int, default=None, help="root RNG seed")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument(
            "--format", choices=("csv", "json"), default=None, help="spectra file format"
        )
        p.add_argument("--threads", type=int, default=None, help="worker pool size")
        p.add_argument(
            "--allow-large",
            action="store_true",
            help="permit superoperators of dimension 4096 and beyond",
        )
    return parser


def config_from_args(args: argparse.Namespace):
    entry = CATALOG[args.command]
    cfg = entry.defaults
    updates: dict = {}
    if args.L is not None:
        updates["n_values"] = (2**args.L,)
    if args.m is not None:
        updates["m_values"] = (args.m,)
    if args.t is not None:
        updates["t_values"] = (args.t,)
    if args.kmax is not None:
        updates["k_values"] = (args.kmax,)
    if args.ensemble is not None:
        updates["ensemble"] = args.ensemble
    if args.seed is not None:
        updates["seed"] = args.seed
    out = args.out or os.environ.get("DENOSPEC_OUT")
    if out:
        updates["out_dir"] = out
    if args.format is not None:
        updates["fmt"] = args.format
    if args.threads is not None:
        updates["threads"] = args.threads
    if args.allow_large:
        updates["allow_large"] = True
    if updates:
        from dataclasses import replace

        cfg = replace(cfg, **updates)
    return cfg


def main(argv=None) -> int:
    logging.basicConfig(
        level=logging.INFO, format="%(name)s: %(message)s", stream=sys.stderr
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        if args.json:
            print(json.dumps(catalog_as_dict(), indent=2, sort_keys=True))
        else:
            for entry in CATALOG.values():
                d = entry.defaults
                print(
                    f"{entry.name:18s} N={list(d.n_values)} m={list(d.m_values)} "
                    f"t={list(d.t_values)}"
                    + (f" k_max={list(d.k_values)}" if d.k_values else "")
                    + f" noise={d.noise} ensemble={d.ensemble}  {entry.description}"
                )
        return EXIT_OK
    try:
        cfg = config_from_args(args)
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        summary = run_experiment(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExperimentError, NonInvertibleChannelError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(json.dumps({"outputs": summary["_outputs"]}, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
