"""
ergodic-rates command line.

    ergodic-rates run --config exp.json [--seed N] [--out DIR]
    ergodic-rates list-checks

Exit codes: 0 all requested checks hold, 1 a check failed, 2 invalid config
or a check that does not apply. Nothing is written on exit 2.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from ergodic_rates.checks import check_registry
from ergodic_rates.core.errors import ErgodicRatesError
from ergodic_rates.core.logging import logger
from ergodic_rates.cli.artifacts import REPORTS_JSON, write_artifacts
from ergodic_rates.cli.config import ExperimentConfig, load_config
from ergodic_rates.cli.runner import execute, prepare_context

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergodic-rates",
        description="Spectral measures, Cesàro decay rates and numerical theorem checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run one JSON-configured experiment.")
    run.add_argument("--config", required=True, help="Path to the experiment config (JSON).")
    run.add_argument("--seed", type=int, default=None, help="Override the config seed.")
    run.add_argument("--out", default=None, help="Override output.dir.")

    sub.add_parser("list-checks", help="List registered check identifiers.")
    return parser


def apply_overrides(config: ExperimentConfig, seed: Optional[int], out: Optional[str]) -> ExperimentConfig:
    update = {}
    if seed is not None:
        update["seed"] = seed
    if out is not None:
        update["output"] = config.output.model_copy(update={"dir": out})
    return config.model_copy(update=update) if update else config


def cmd_list_checks() -> int:
    print(check_registry.listing())
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = apply_overrides(load_config(args.config), args.seed, args.out)
        ctx = prepare_context(config)
    except ErgodicRatesError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE

    logger.info("🚀 [CLI] {}: {} checks on {}", config.name, len(config.checks), ctx.model.describe())
    try:
        result = execute(config, ctx)
    except ErgodicRatesError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(config.output.dir)
    written = write_artifacts(result, out_dir)

    if result.all_hold:
        return EXIT_OK
    failed = ", ".join(r.claim for r in result.failures)
    report_path = written.get(REPORTS_JSON, out_dir)
    print(f"checks failed: {failed}; see {report_path}", file=sys.stderr)
    return EXIT_CHECK_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-checks":
        return cmd_list_checks()
    return cmd_run(args)


def start() -> None:
    """Entry point for CLI (ergodic-rates)"""
    sys.exit(main())


if __name__ == "__main__":
    start()
