"""Optional run ledger: batteries and their final run outcomes in a SQL database."""

import logging
import math
from typing import Dict, List, Optional

from sqlalchemy import select
from sqlalchemy.orm import sessionmaker

from dogfight.database import SessionLocal, init_db
from dogfight.models.problem import RunRecord
from dogfight.models.report import SummaryRow
from dogfight.models.sql import BatteryRow, RunRow
from dogfight.services.stats import summarize

logger = logging.getLogger(__name__)


def record_battery(
    name: str,
    problem: str,
    root_seed: int,
    runs: int,
    results: Dict[str, List[RunRecord]],
    session_factory: Optional[sessionmaker] = None,
) -> int:
    """
    Store one problem's runs.

    Args:
        name: Experiment name
        problem: Problem label
        root_seed: Root seed of the battery
        runs: Configured run count
        results: Records by algorithm, in run order
        session_factory: Ledger sessions; the configured database by default

    Returns:
        Id of the stored battery
    """
    factory = session_factory or SessionLocal
    init_db(factory)
    with factory() as session:
        try:
            battery = BatteryRow(name=name, problem=problem, root_seed=root_seed, runs=runs)
            for algorithm, records in results.items():
                for index, record in enumerate(records):
                    battery.run_rows.append(
                        RunRow(
                            algorithm=algorithm,
                            seed=str(record.seed),
                            run_index=index,
                            best_value=record.best_value if math.isfinite(record.best_value) else None,
                            feasible=record.feasible,
                            evaluations=record.evaluations,
                            elapsed=record.elapsed,
                            truncated=record.truncated,
                            best_point=list(record.best_point),
                        )
                    )
            session.add(battery)
            session.commit()
            logger.info(f"Recorded battery {battery.id} ({problem}) with {len(battery.run_rows)} runs")
            return battery.id
        except Exception as e:
            session.rollback()
            logger.error(f"Error recording battery {name}/{problem}: {e}")
            raise


def load_runs(battery_id: int, session_factory: Optional[sessionmaker] = None) -> Dict[str, List[RunRecord]]:
    """Stored runs of a battery as RunRecords, without curves."""
    factory = session_factory or SessionLocal
    with factory() as session:
        battery = session.get(BatteryRow, battery_id)
        if battery is None:
            raise KeyError(f"no battery with id {battery_id}")
        rows = session.execute(
            select(RunRow).where(RunRow.battery_id == battery_id).order_by(RunRow.algorithm, RunRow.run_index)
        ).scalars().all()
        results: Dict[str, List[RunRecord]] = {}
        for row in rows:
            results.setdefault(row.algorithm, []).append(
                RunRecord(
                    seed=int(row.seed),
                    algorithm=row.algorithm,
                    problem=battery.problem,
                    best_point=row.best_point or [],
                    best_value=row.best_value if row.best_value is not None else math.inf,
                    feasible=row.feasible,
                    elapsed=row.elapsed,
                    evaluations=row.evaluations,
                    truncated=row.truncated,
                )
            )
        return results


def summary_from_ledger(battery_id: int, session_factory: Optional[sessionmaker] = None) -> Dict[str, SummaryRow]:
    """Per-algorithm summary rebuilt from stored rows."""
    return {algorithm: summarize(runs) for algorithm, runs in load_runs(battery_id, session_factory).items()}
