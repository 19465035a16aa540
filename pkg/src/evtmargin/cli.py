"""Command-line driver.

    evtmargin run --config run.yaml [--seed N] [--output-dir DIR]
    evtmargin verify --config run.yaml

Exit codes: 0 success, 1 validation error, 2 computation error,
3 verification failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import ConfigError, load_config
from .pipeline import STAGES, PipelineError, VerificationError, run_pipeline, verify
from .timeseries import DataError

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = {
    "summarize": ("summarize",),
    "fit": ("fit",),
    "margins": ("fit", "margins"),
    "analytics": ("analytics",),
    "run": STAGES,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evtmargin",
                                     description="Extreme-value margins for inverse futures.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["verify"]:
        p = sub.add_parser(name)
        p.add_argument("--config", "-c", required=True, help="YAML run configuration")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--output-dir", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = load_config(args.config).with_overrides(args.seed, args.output_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.command == "verify":
        try:
            report = verify(config)
        except VerificationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        for c in report["cells"]:
            if not c["passed"]:
                print(f"FAIL {c['kind']}/{c['frequency']}/{c['position']} p={c['probability']}: "
                      f"simulated {c['mc_frequency']:.5f} (z={c['z']:+.2f})")
        print(f"{report['n_cells'] - report['n_failed']}/{report['n_cells']} margin cells passed")
        return EXIT_OK if report["passed"] else EXIT_VERIFY

    try:
        manifest = run_pipeline(config, COMMANDS[args.command])
    except (DataError, ConfigError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PipelineError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    for name in manifest["files"]:
        print(config.out / name)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
