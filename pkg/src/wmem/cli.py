"""Command-line entry point: ``wmem <experiment> [--config PATH] ...``."""
from __future__ import annotations

import argparse
import sys

from .experiments import EXPERIMENTS, ConfigError, default_config, load_config, run, with_overrides

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wmem", description="Wireless memory activation/approximation experiments")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config; defaults reproduce the reference curves")
        p.add_argument("--out", help="output directory (overrides config and $WMEM_OUTPUT_DIR)")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--parallelism", type=int)
        p.add_argument("--dump-config", action="store_true", help="print the effective config and exit")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else default_config(args.experiment)
        if cfg.experiment != args.experiment:
            raise ConfigError(f"experiment: config is for {cfg.experiment!r}, not {args.experiment!r}")
        cfg = with_overrides(cfg, seed=args.seed, trials=args.trials, parallelism=args.parallelism)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.dump_config:
        sys.stdout.write(cfg.dumps())
        return EXIT_OK
    path, ok = run(cfg, args.out)
    if cfg.experiment == "validate":
        sys.stdout.write(path.read_text())
    else:
        print(path)
    return EXIT_OK if ok else EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
