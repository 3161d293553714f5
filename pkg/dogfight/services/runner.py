"""Experiment batteries: every (problem, algorithm, seed) cell, then the artifacts."""

import logging
import traceback
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

from dogfight.core.errors import HistoryMissingError
from dogfight.core.primitives import derive_run_seed
from dogfight.models.experiment import ExperimentConfig, ProblemSelector
from dogfight.models.problem import RunRecord
from dogfight.services import reports
from dogfight.services.registry import resolve_budget, resolve_problem, run_algorithm, validate_experiment
from dogfight.services.stats import build_report

logger = logging.getLogger(__name__)


class CellTask(BaseModel):
    """One run, as plain data so it can cross a process boundary."""

    selector: ProblemSelector
    algorithm: str
    params: Dict = Field(default_factory=dict)
    run_index: int
    seed: int
    budget: Optional[int] = None
    record_history: bool = False


class CellOutcome(BaseModel):
    problem: str
    algorithm: str
    run_index: int
    record: Optional[RunRecord] = None
    error: Optional[str] = None


class BatteryResult(BaseModel):
    """What a battery produced: records by problem and algorithm, artifacts and failures."""

    results: Dict[str, Dict[str, List[RunRecord]]] = Field(default_factory=dict)
    artifacts: List[Path] = Field(default_factory=list)
    failures: List[CellOutcome] = Field(default_factory=list)
    battery_ids: List[int] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def run_cell(task: CellTask) -> CellOutcome:
    """Run one cell; failures are captured, never raised."""
    label = task.selector.label
    try:
        problem = resolve_problem(task.selector)
        budget = resolve_budget(problem, task.budget)
        record = run_algorithm(task.algorithm, problem, budget, task.seed, task.params, task.record_history)
        record = record.model_copy(update={"problem": label})
        return CellOutcome(problem=label, algorithm=task.algorithm, run_index=task.run_index, record=record)
    except Exception:
        message = traceback.format_exc()
        logger.error(f"Run {label}/{task.algorithm}/seed{task.run_index} failed:\n{message}")
        return CellOutcome(problem=label, algorithm=task.algorithm, run_index=task.run_index, error=message)


def plan_cells(config: ExperimentConfig) -> List[CellTask]:
    """Cells in emission order; run i uses the same derived seed for every algorithm."""
    seeds = [derive_run_seed(config.root_seed, i) for i in range(config.runs)]
    return [
        CellTask(
            selector=selector,
            algorithm=spec.name,
            params=spec.params,
            run_index=i,
            seed=seeds[i],
            budget=config.budget,
            record_history=config.diversity,
        )
        for selector in config.problems
        for spec in config.algorithms
        for i in range(config.runs)
    ]


def execute_cells(tasks: List[CellTask], workers: int = 1) -> List[CellOutcome]:
    """Outcomes in task order regardless of completion order."""
    if workers <= 1 or len(tasks) <= 1:
        return [run_cell(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, tasks))


def emit_diversity(record: RunRecord, path: Union[str, Path]) -> Path:
    """
    Write the per-iteration exploration/exploitation trace of a recorded run.

    Raises:
        HistoryMissingError: The run was made without position-history capture
    """
    if not record.diversity:
        raise HistoryMissingError(
            f"run {record.problem}/{record.algorithm}/seed {record.seed} has no recorded position history; "
            "rerun with diversity capture enabled"
        )
    return reports.write_diversity(record.diversity, path)


def run_battery(config: ExperimentConfig) -> BatteryResult:
    """
    Execute every cell of the experiment and write its artifacts.

    Writes curves/<problem>__<algorithm>__seed<i>.csv, summary.csv, report.csv,
    its terminal rendering report.txt and, with diversity capture,
    diversity/<...>.csv under the output directory. Failed cells are logged and left out of the statistics.

    Args:
        config: Validated experiment configuration

    Returns:
        BatteryResult with records, written paths and failed cells
    """
    validate_experiment(config)
    out = Path(config.output_dir)
    tasks = plan_cells(config)
    logger.info(
        f"Battery {config.name}: {len(config.problems)} problems x {len(config.algorithms)} algorithms "
        f"x {config.runs} runs on {config.workers} workers"
    )
    outcomes = execute_cells(tasks, config.workers)

    result = BatteryResult()
    for outcome in outcomes:
        by_algorithm = result.results.setdefault(outcome.problem, {})
        runs = by_algorithm.setdefault(outcome.algorithm, [])
        if outcome.error is not None:
            result.failures.append(outcome)
            continue
        runs.append(outcome.record)
        result.artifacts.append(
            reports.write_curve(
                outcome.record,
                out / "curves" / reports.run_file_name(outcome.problem, outcome.algorithm, outcome.run_index),
            )
        )
        if config.diversity:
            result.artifacts.append(
                emit_diversity(
                    outcome.record,
                    out / "diversity" / reports.run_file_name(outcome.problem, outcome.algorithm, outcome.run_index),
                )
            )

    complete = {
        problem: by_algorithm
        for problem, by_algorithm in result.results.items()
        if all(by_algorithm.get(name) for name in config.algorithm_names)
    }
    if complete:
        report = build_report(complete, paired=config.paired)
        result.artifacts.append(reports.write_summary(report.summaries, out / "summary.csv"))
        result.artifacts.append(reports.write_report_csv(report, out / "report.csv"))
        result.artifacts.append(reports.write_report_text(report, out / "report.txt"))
    else:
        logger.error(f"Battery {config.name}: no problem has runs for every algorithm; no report written")

    if config.record:
        from dogfight.services.recorder import record_battery

        for problem, by_algorithm in result.results.items():
            result.battery_ids.append(record_battery(config.name, problem, config.root_seed, config.runs, by_algorithm))

    logger.info(
        f"Battery {config.name} finished: {len(tasks) - len(result.failures)}/{len(tasks)} runs, "
        f"{len(result.artifacts)} files under {out}"
    )
    return result
