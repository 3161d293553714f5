"""
Dogfight Search - command-line entry point.

Subcommands:
    run        execute an experiment battery and write curves, summary and report
    timing     run the computational-cost harness
    terrain    generate a seeded terrain and write it as a text grid
    diversity  run one recorded optimizer run and write its diversity trace

Exit status is 0 when every run completed, 1 when any run failed and 2 on a
configuration or name error before any run started.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from .config import settings
from .core.errors import ConfigurationError, DogfightError
from .models.experiment import AlgorithmSpec, ExperimentConfig, ProblemKind, ProblemSelector
from .services.experiments import load_experiment
from .services.pathplan import generate_terrain, save_terrain
from .services.registry import resolve_budget, resolve_problem, run_algorithm, validate_experiment
from .services.reports import run_file_name
from .services.runner import emit_diversity, run_battery
from .services.timing import REFERENCE_OVERHEAD, timing_harness

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUN_FAILED = 1
EXIT_CONFIG = 2

ZONE_PREFIX = "preset:"


def configure_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if (verbose or settings.DEBUG) else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def _zones(value: Optional[str]) -> Optional[str]:
    if value is None:
        return None
    if value == "none":
        return ""
    if not value.startswith(ZONE_PREFIX):
        raise ConfigurationError(f"--zones must be 'preset:<name>' or 'none', got {value!r}")
    return value[len(ZONE_PREFIX):]


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="root seed")
    parser.add_argument("--runs", type=int, help="independent runs per algorithm")
    parser.add_argument("--budget", type=int, help="evaluations per run (default: dimension schedule)")
    parser.add_argument("--workers", type=int, help="parallel worker processes")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--dim", type=int, help="dimension for benchmark problems")
    parser.add_argument("--terrain-seed", type=int, help="seed of the procedural terrain")
    parser.add_argument("--zones", help="no-fly zones for path planning: preset:<name> or none")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dogfight", description="Dogfight Search experiment toolkit")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    parser.add_argument("--timing", action="store_true", help="run the timing harness and exit")
    commands = parser.add_subparsers(dest="command")

    run = commands.add_parser("run", help="run an experiment battery")
    run.add_argument("config", nargs="?", help="experiment INI file")
    run.add_argument("--problem", action="append", help="problem selector, repeatable (without a config file)")
    run.add_argument("--algorithms", default="DoS,PSO,RandomSearch", help="comma-separated algorithm names")
    run.add_argument("--diversity", action="store_true", help="record position history and write diversity traces")
    run.add_argument("--record", action="store_true", help="store the runs in the ledger database")
    run.add_argument("--paired", action="store_true", help="use the signed-rank test")
    _add_run_flags(run)

    commands.add_parser("timing", help="run the timing harness")

    terrain = commands.add_parser("terrain", help="generate and save a terrain grid")
    terrain.add_argument("--terrain-seed", type=int, default=settings.TERRAIN_SEED)
    terrain.add_argument("--grid-size", type=int, default=settings.PATH_GRID_SIZE)
    terrain.add_argument("--out", default="terrain.txt")

    diversity = commands.add_parser("diversity", help="write the diversity trace of one run")
    diversity.add_argument("--problem", required=True, help="problem selector")
    diversity.add_argument("--algorithm", default="DoS")
    _add_run_flags(diversity)
    return parser


def _experiment_from_args(args: argparse.Namespace) -> ExperimentConfig:
    overrides: Dict[str, Any] = {
        "root_seed": args.seed,
        "runs": args.runs,
        "budget": args.budget,
        "workers": args.workers,
        "output_dir": args.out,
        "diversity": args.diversity or None,
        "record": args.record or None,
        "paired": args.paired or None,
        "dimension": args.dim,
        "terrain_seed": args.terrain_seed,
        "zones": _zones(args.zones),
    }
    if args.config:
        return load_experiment(args.config, overrides)
    if not args.problem:
        raise ConfigurationError("give an experiment file or at least one --problem")
    zones = overrides.pop("zones")
    dimension = overrides.pop("dimension")
    terrain_seed = overrides.pop("terrain_seed")
    selectors: List[ProblemSelector] = []
    for text in args.problem:
        selector = ProblemSelector.parse(text, dimension=dimension, terrain_seed=terrain_seed)
        if zones is not None and selector.kind == ProblemKind.PATHPLAN:
            selector = selector.model_copy(update={"name": zones})
        selectors.append(selector)
    fields = {k: v for k, v in overrides.items() if v is not None}
    algorithms = [AlgorithmSpec(name=name.strip()) for name in args.algorithms.split(",") if name.strip()]
    return ExperimentConfig(problems=selectors, algorithms=algorithms, **fields)


def _run(args: argparse.Namespace) -> int:
    try:
        config = _experiment_from_args(args)
        validate_experiment(config)
    except (DogfightError, ValidationError, ValueError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    result = run_battery(config)
    for failure in result.failures:
        logger.error(f"Failed: {failure.problem}/{failure.algorithm}/seed{failure.run_index}")
    return EXIT_OK if result.ok else EXIT_RUN_FAILED


def _timing() -> int:
    result = timing_harness()
    print(f"T0       {result.t0:.6f} s")
    print(f"T1       {result.t1:.6f} s")
    print(f"T2 mean  {result.t2_mean:.6f} s")
    print(f"overhead {result.overhead:.6f}  (published reference {REFERENCE_OVERHEAD}, hardware-dependent)")
    return EXIT_OK


def _terrain(args: argparse.Namespace) -> int:
    try:
        terrain = generate_terrain(seed=args.terrain_seed, grid_size=args.grid_size)
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    save_terrain(terrain, args.out)
    logger.info(f"Terrain seed={args.terrain_seed} written to {args.out}")
    return EXIT_OK


def _diversity(args: argparse.Namespace) -> int:
    try:
        selector = ProblemSelector.parse(args.problem, dimension=args.dim, terrain_seed=args.terrain_seed)
        zones = _zones(args.zones)
        if zones is not None and selector.kind == ProblemKind.PATHPLAN:
            selector = selector.model_copy(update={"name": zones})
        validate_experiment(ExperimentConfig(problems=[selector], algorithms=[AlgorithmSpec(name=args.algorithm)]))
        problem = resolve_problem(selector)
        budget = resolve_budget(problem, args.budget)
    except (DogfightError, ValidationError, ValueError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    seed = args.seed if args.seed is not None else settings.DEFAULT_ROOT_SEED
    try:
        record = run_algorithm(args.algorithm, problem, budget, seed, record_history=True)
        record = record.model_copy(update={"problem": selector.label})
    except Exception as e:
        logger.exception(f"Run failed: {e}")
        return EXIT_RUN_FAILED
    out = Path(args.out or settings.OUTPUT_DIR) / "diversity" / run_file_name(selector.label, args.algorithm, 0)
    emit_diversity(record, out)
    logger.info(f"Diversity trace written to {out}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    if args.timing or args.command == "timing":
        return _timing()
    if args.command == "run":
        return _run(args)
    if args.command == "terrain":
        return _terrain(args)
    if args.command == "diversity":
        return _diversity(args)
    parser.print_help()
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
