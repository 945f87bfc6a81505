"""Command-line entry point of the verification engine."""

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .config import settings
from .errors import VerificationError
from .verification.models import SUITES
from .verification.settings_file import build_suite_config
from .verification.suites import cache_cosets, describe_suites, run_suite

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper()),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m app",
                                     description="Verification suites for harmonic Siegel-Maass and "
                                                 "skew-Maass-Jacobi forms")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one verification suite and write its JSON report")
    run.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}")
    run.add_argument("--config", help="YAML file with SuiteConfig fields")
    run.add_argument("--k", type=int, action="append", dest="k_values", help="weight k (repeatable)")
    run.add_argument("--bound", type=int, action="append", dest="bounds", help="coset bound (repeatable)")
    run.add_argument("--step", type=float, help="finite-difference step")
    run.add_argument("--delta-max", type=float, dest="delta_max", help="largest delta of the limit grid")
    run.add_argument("--out", help="report directory")
    run.add_argument("--cache-dir", dest="cache_dir", help="coset cache directory")
    run.add_argument("--tolerance-scale", type=float, dest="tolerance_scale", help="multiplier on every tolerance")
    run.add_argument("--seed", type=int, help="seed for sample points")

    commands.add_parser("list", help="list the registered suites")

    cache = commands.add_parser("cache", help="write a coset family to the cache directory")
    cache.add_argument("--kind", choices=("siegel", "jacobi"), required=True)
    cache.add_argument("--bound", type=int, required=True)
    cache.add_argument("--cache-dir", dest="cache_dir", default=settings.coset_cache_dir)
    return parser


def _run(args: argparse.Namespace) -> int:
    overrides = {
        "k_values": args.k_values, "bounds": args.bounds, "step": args.step, "delta_max": args.delta_max,
        "out": args.out, "cache_dir": args.cache_dir, "tolerance_scale": args.tolerance_scale, "seed": args.seed,
    }
    config = build_suite_config(args.suite, args.config, overrides)
    report = run_suite(args.suite, config)
    summary = report.summary
    print(f"{summary.suite}: {summary.verdict} ({summary.passed}/{summary.total} passed, "
          f"{summary.failed} failed, {summary.errors} errors, {summary.skipped} skipped)")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _list() -> int:
    for entry in describe_suites():
        print(f"{entry['name']:<22}{entry['description']}")
    return EXIT_PASS


def _cache(args: argparse.Namespace) -> int:
    count = cache_cosets(args.kind, args.bound, args.cache_dir)
    print(json.dumps({"kind": args.kind, "bound": args.bound, "count": count, "cache_dir": args.cache_dir}))
    return EXIT_PASS


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args)
        if args.command == "list":
            return _list()
        return _cache(args)
    except VerificationError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_INTERNAL
    except Exception as e:
        logger.exception(f"Internal error: {e}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
