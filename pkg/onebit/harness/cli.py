# onebit/harness/cli.py

"""
Command-line entry point.

Exit codes: 0 on success, 1 when a validation run reports failures,
2 on configuration or experiment errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from backend.config.logging_config import init_logging
from backend.config.settings import settings
from onebit.channel_model.models import SystemConfig
from onebit.errors import OneBitError
from onebit.harness.models import ExperimentName, ExperimentResult, ExperimentSpec, SweepOverrides
from onebit.harness.runner import default_trials, run
from onebit.transceive.models import Processing

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onebit-experiment",
        description="Run one-bit massive MIMO experiments and write CSV artifacts",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python scripts/run_experiment.py --config scenarios/fig2_cell.json --experiment fig2 --trials 200
  python scripts/run_experiment.py --config paper_cell --experiment pareto --processing mrc
  python scripts/run_experiment.py --config paper_cell --experiment validation
        """,
    )
    parser.add_argument("--config", required=True, help="Scenario file, or a name under the scenarios directory")
    parser.add_argument(
        "--experiment", required=True, choices=[e.value for e in ExperimentName], help="Experiment to run"
    )
    parser.add_argument("--seed", type=int, help="Master seed (overrides the scenario)")
    parser.add_argument("--trials", type=int, help="Monte Carlo trials or realizations per point")
    parser.add_argument("--out", type=Path, help=f"Output directory (default: {settings.OUTPUT_DIR}/<experiment>)")
    parser.add_argument(
        "--processing", choices=[p.value for p in Processing], help="Restrict to one scheme (default: both)"
    )
    parser.add_argument("--M", dest="M_values", type=int, nargs="+", help="Antenna counts to sweep")
    parser.add_argument("--rho-db", type=float, nargs="+", help="Operating powers in dB")
    parser.add_argument(
        "--weights", type=float, nargs=2, action="append", metavar=("W_SE", "W_EE"),
        help="Weight pair for pareto and optimal-* runs (repeatable)",
    )
    parser.add_argument("--total-power-db", type=float, help="Total downlink power for fig3, in dB")
    parser.add_argument("--T", type=int, help="Coherence interval (overrides the scenario)")
    parser.add_argument("--samples", type=int, help="Samples per validation check")
    parser.add_argument("--workers", type=int, default=settings.MAX_WORKERS, help="Trial worker threads")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level")
    return parser


def build_spec(args: argparse.Namespace) -> ExperimentSpec:
    name = ExperimentName(args.experiment)
    config = SystemConfig.from_file(args.config)
    if args.seed is not None:
        config = config.replace(seed=args.seed)
    processing = [Processing(args.processing)] if args.processing else [Processing.MRC, Processing.ZF]
    weights = [tuple(pair) for pair in args.weights] if args.weights else None
    overrides = SweepOverrides(
        M_values=args.M_values,
        rho_db=args.rho_db,
        weights=weights,
        total_power_db=args.total_power_db,
        T=args.T,
        samples=args.samples,
    )
    return ExperimentSpec(
        name=name,
        config=config,
        overrides=overrides,
        trials=args.trials or default_trials(name),
        output_dir=args.out or Path(settings.OUTPUT_DIR) / name.value,
        processing=processing,
        max_workers=args.workers,
    )


def print_summary(result: ExperimentResult, console: Optional[Console] = None) -> None:
    console = console or Console(stderr=True)
    table = Table(title=f"[bold cyan]{result.name.value}[/bold cyan]", show_header=True, header_style="bold cyan")
    table.add_column("Quantity", style="green")
    table.add_column("Value", justify="right", style="yellow")
    for key, value in result.summary.items():
        table.add_row(key, f"{value:.6g}")
    table.add_row("files written", str(len(result.files)))
    table.add_row("wall time [s]", f"{result.timings.get('total', 0.0):.2f}")
    console.print(table)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    init_logging(args.log_level)

    try:
        spec = build_spec(args)
        result = run(spec)
    except (OneBitError, ValueError, OSError) as e:
        logger.error(f"Experiment failed: {e}")
        return EXIT_ERROR

    print_summary(result)
    return EXIT_OK if result.passed else EXIT_VALIDATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
