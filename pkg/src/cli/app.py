"""Command-line entry point.

Option precedence: explicit flags, then ``--config`` file values (a JSON
object or a run manifest), then the command's defaults. Exit codes: 0 on
success, 2 for invalid input, 3 for I/O failures, 4 when generated output
breaks an internal invariant.
"""
import argparse
import inspect
import sys
from time import perf_counter
from typing import Any, Callable, Dict, List, Optional

from loguru import logger

from .. import __version__
from ..config.settings import settings
from ..core.artifacts import read_config_file, write_manifest
from ..core.initialization import SystemInitializer
from ..deployment.exceptions import (
    ArtifactError,
    ConfigurationError,
    EstimationError,
    InvariantError,
)
from ..deployment.rng import GENERATOR_NAME
from ..models.reports import RunManifest
from .commands import COMMANDS, INPUT_OPTIONS, OUTPUT_OPTIONS

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_INVARIANT = 4

# Options handled by the entry point itself, never passed to a command
_GLOBAL_OPTIONS = {"command", "config", "log_level", "verbose"}


def _add_common(parser: argparse.ArgumentParser, seeded: bool = True) -> None:
    parser.add_argument("--config", help="JSON options file or a run manifest")
    parser.add_argument("--out", help="output path")
    if seeded:
        parser.add_argument("--seed", type=int, help=f"64-bit root seed (default {settings.DEFAULT_SEED})")


def _add_sector(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--l1", type=float, help="inner radius L1")
    parser.add_argument("--l2", type=float, help="outer radius L2")
    parser.add_argument("--a1", help="lower angle in radians or as k*pi/m, e.g. 'pi/6'")
    parser.add_argument("--a2", help="upper angle in radians or as k*pi/m, e.g. '4pi/9'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asd",
        description="Area-specific deployment simulator: ring-sector sampling, "
                    "controlled and automatic inhomogeneous deployments, histogram density estimation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help=f"log level (default {settings.LOG_LEVEL})")
    parser.add_argument("-v", "--verbose", action="store_true", help="shortcut for --log-level DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample-ring", help="uniform points over one ring sector")
    _add_common(p)
    _add_sector(p)
    p.add_argument("--n", type=int, help="number of points")
    p.add_argument("--scenario", help="bundled density-validation row, e.g. circular-ring")

    p = sub.add_parser("deploy-controlled", help="deployment following a network plan")
    _add_common(p)
    p.add_argument("--plan", help="plan file (JSON)")
    p.add_argument("--scenario", help="bundled plan: six-sector or ten-sector")
    p.add_argument("--workers", type=int, help="sample sectors on this many threads")

    p = sub.add_parser("deploy-auto", help="automatic deployment from (L, max layers, n)")
    _add_common(p)
    p.add_argument("--cell-radius", type=float, help="cell radius L")
    p.add_argument("--max-layers", type=int, help="largest layer count")
    p.add_argument("--total-nodes", type=int, help="number of nodes n_s")
    p.add_argument("--scenario", help="bundled scale: small, medium or large")
    p.add_argument("--workers", type=int, help="sample layers on this many threads")

    p = sub.add_parser("density", help="histogram density grid and report of a points file")
    _add_common(p, seeded=False)
    p.add_argument("--points", help="points CSV")
    p.add_argument("--bins", type=int, help=f"bins along x (default {settings.DEFAULT_BINS})")
    p.add_argument("--bins-y", type=int, help="bins along y (default: same as --bins)")
    p.add_argument("--bounds", type=float, nargs=4, metavar=("X_LO", "X_HI", "Y_LO", "Y_HI"))
    _add_sector(p)

    p = sub.add_parser("report", help="reproduce the single-sector density-validation table")
    _add_common(p)
    p.add_argument("--samples", type=int, help="points per row (default: published sample size)")
    p.add_argument("--bins", type=int, help="bins per axis (default: published resolution)")
    p.add_argument("--rows", nargs="+", help="subset of row names")
    p.add_argument("--workers", type=int, help="run rows on this many threads")

    p = sub.add_parser("plot", help="emit a matplotlib script for a points or grid file")
    _add_common(p, seeded=False)
    p.add_argument("--input", dest="source", help="points or grid file")
    p.add_argument("--marker-size", type=float, help="scatter marker size")
    return parser


def resolve_options(func: Callable[..., Any], cli: Dict[str, Any], file_options: Dict[str, Any]) -> Dict[str, Any]:
    """Merge file options and explicit flags over the command's defaults.

    Raises:
        ConfigurationError: On unknown or missing options
    """
    parameters = inspect.signature(func).parameters
    file_options = {key.replace("-", "_"): value for key, value in file_options.items()}
    unknown = sorted(set(file_options) - set(parameters))
    if unknown:
        raise ConfigurationError(f"unknown options in config file: {unknown}")

    merged = dict(file_options)
    merged.update({key: value for key, value in cli.items() if value is not None})
    missing = [
        name for name, param in parameters.items()
        if param.default is inspect.Parameter.empty and merged.get(name) is None
    ]
    if missing:
        raise ConfigurationError(f"missing required options: {', '.join('--' + m.replace('_', '-') for m in missing)}")

    bound = inspect.signature(func).bind(**merged)
    bound.apply_defaults()
    return dict(bound.arguments)


def run(args: argparse.Namespace) -> int:
    func = COMMANDS[args.command]
    cli = {key: value for key, value in vars(args).items() if key not in _GLOBAL_OPTIONS}
    file_options = read_config_file(args.config) if args.config else {}
    options = resolve_options(func, cli, file_options)

    logger.debug(f"Running {args.command} with {options}")
    start = perf_counter()
    result = func(**options)
    elapsed = perf_counter() - start

    manifest = RunManifest(
        command=args.command,
        config=options,
        seed=options.get("seed"),
        inputs=[str(options[k]) for k in sorted(INPUT_OPTIONS) if options.get(k) is not None],
        outputs=[str(options[k]) for k in sorted(OUTPUT_OPTIONS)],
        tool_version=__version__,
        generator=GENERATOR_NAME,
        wall_time=elapsed,
    )
    write_manifest(options["out"], manifest)
    logger.info(f"{args.command} finished in {elapsed:.3f} s: {result}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = "DEBUG" if args.verbose else args.log_level
    initializer = SystemInitializer(log_level=level)
    if not initializer.initialize_system():
        return EXIT_INVALID

    try:
        return run(args)
    except InvariantError as e:
        logger.error(f"Invariant violated: {e} {e.details}")
        return EXIT_INVARIANT
    except (ConfigurationError, EstimationError, ArtifactError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INVALID
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
