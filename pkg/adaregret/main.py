"""adaregret - command-line entry point."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path

from adaregret.config import get_settings
from adaregret.errors import AdaRegretError, UsageError
from adaregret.experiments import (
    load_config,
    lower_bound_study,
    run_experiment,
    trace_study,
    verify_suite,
)
from adaregret.experiments.lower_bound import LOWER_BOUND_COLUMNS
from adaregret.experiments.trace_study import TRACE_COLUMNS
from adaregret.schemas import Fault, SuiteScale
from adaregret.storage import ArtifactStore

logger = logging.getLogger("adaregret")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_ERROR = 4


def _experiment_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="key=value experiment file")
    parser.add_argument("--out", type=Path, help="output directory (overrides the file)")
    parser.add_argument("--seed", type=int, help="base seed; repetition r uses seed + r")
    parser.add_argument("--reps", type=int, help="number of repetitions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaregret",
        description="Projected online sub-gradient descent with adaptive dynamic-regret rates",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="run an experiment and write trace/summary CSV")
    _experiment_flags(run_parser)
    run_parser.add_argument(
        "--trace-all",
        action="store_const",
        const=True,
        help="write every repetition to trace.csv, not only the first",
    )

    verify = commands.add_parser("verify", help="run the acceptance suite")
    verify.add_argument("--scale", choices=[s.value for s in SuiteScale], default=SuiteScale.SMALL.value)
    verify.add_argument(
        "--inject-fault",
        action="append",
        choices=[f.value for f in Fault],
        default=[],
        help="deliberately break the implementation to check the suite catches it",
    )
    verify.add_argument("--out", type=Path, help="directory for verify.json")
    verify.add_argument("--seed", type=int, default=0)

    _experiment_flags(commands.add_parser("lower-bound", help="Monte Carlo regret on Rademacher streams"))

    trace = commands.add_parser("trace-ineq", help="energy versus trace-root study on random Gram matrices")
    trace.add_argument("--instances", type=int, default=500)
    trace.add_argument("--out", type=Path)
    trace.add_argument("--seed", type=int, default=0)
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    return {"seed": args.seed, "repetitions": args.reps, "output": None if args.out is None else str(args.out)}


def _output(args: argparse.Namespace, configured: str | None = None) -> Path:
    return Path(args.out or configured or get_settings().output_directory)


async def _run(args: argparse.Namespace) -> int:
    config = load_config(args.config, _overrides(args) | {"trace_all": args.trace_all})
    result = await run_experiment(config, _output(args, config.output))
    for name, path in result.artifacts.items():
        print(f"{name}: {path}")
    print(f"{result.repetitions} repetitions, {result.violation_count} with bound violations")
    return EXIT_VIOLATION if result.exit_status else EXIT_OK


async def _verify(args: argparse.Namespace) -> int:
    report = await verify_suite(
        SuiteScale(args.scale),
        [Fault(f) for f in args.inject_fault],
        _output(args),
        args.seed,
    )
    for criterion in report.criteria:
        status = "PASS" if criterion.passed else "FAIL"
        print(f"{status} {criterion.name} {criterion.error or criterion.detail}".rstrip())
    return EXIT_OK if report.passed else EXIT_VIOLATION


async def _lower_bound(args: argparse.Namespace) -> int:
    config = load_config(
        args.config,
        _overrides(args),
        defaults={"horizon": 4096, "repetitions": 2000, "policy.p_hat": 0.0},
    )
    study = await asyncio.to_thread(lower_bound_study, config)
    store = ArtifactStore(_output(args, config.output))
    path = await store.write_csv("lower_bound.csv", LOWER_BOUND_COLUMNS, study.rows)
    print(f"lower_bound: {path}")
    print(
        f"mean regret {study.mean_regret:.6g}; "
        f"lower bound (sum form) {float(study.lower_sum.mean()):.6g}; "
        f"upper bound {float(study.upper.mean()):.6g}"
    )
    return EXIT_OK


async def _trace_ineq(args: argparse.Namespace) -> int:
    if args.instances < 1:
        raise UsageError(["--instances: must be >= 1"])
    results = await asyncio.to_thread(trace_study, args.instances, args.seed)
    path = await ArtifactStore(_output(args)).write_csv(
        "trace_inequality.csv", TRACE_COLUMNS, [r.row for r in results]
    )
    print(f"trace_inequality: {path}")
    print(f"ratio range [{min(r.ratio for r in results):.12g}, {max(r.ratio for r in results):.12g}]")
    return EXIT_OK


COMMANDS = {
    "run": _run,
    "verify": _verify,
    "lower-bound": _lower_bound,
    "trace-ineq": _trace_ineq,
}


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run the subcommand and map failures to exit statuses."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return asyncio.run(COMMANDS[args.command](args))
    except UsageError as e:
        for message in e.errors:
            print(f"usage error: {message}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error("I/O failure: %s", e)
        return EXIT_IO
    except AdaRegretError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
