"""CSV and plain-text artifacts for batteries, with matching readers.

Every float is written with 17 significant digits so the readers get back the
exact doubles that were written.
"""

import logging
import math
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import pandas as pd

from dogfight.config import settings
from dogfight.models.problem import RunRecord
from dogfight.models.report import StatReport, SummaryRow

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FLOAT_FORMAT = f"%.{settings.CSV_SIGNIFICANT_DIGITS}g"
CURVE_COLUMNS = ["evaluations", "best_so_far"]
DIVERSITY_COLUMNS = ["iteration", "exploration_pct", "exploitation_pct"]
SUMMARY_COLUMNS = ["problem", "algorithm", "mean", "std", "best", "success", "runs"]
REPORT_COLUMNS = [
    "problem",
    "algorithm",
    "mean",
    "std",
    "best",
    "success",
    "kruskal_mean_rank",
    "p_value",
    "mark",
    "friedman_mean_rank",
    "friedman_rank",
]


def run_file_name(problem: str, algorithm: str, run_index: int) -> str:
    return f"{problem}__{algorithm}__seed{run_index}.csv"


def _write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def _read_frame(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")


def write_curve(record: RunRecord, path: PathLike) -> Path:
    frame = pd.DataFrame(record.curve, columns=CURVE_COLUMNS)
    frame["evaluations"] = frame["evaluations"].astype("int64")
    frame["best_so_far"] = frame["best_so_far"].astype(float)
    return _write_frame(frame, path)


def read_curve(path: PathLike) -> List[Tuple[int, float]]:
    frame = _read_frame(path)
    return [(int(e), float(v)) for e, v in zip(frame["evaluations"], frame["best_so_far"])]


def write_diversity(trace: Sequence[Tuple[float, float]], path: PathLike) -> Path:
    frame = pd.DataFrame(
        [(i, exploration, exploitation) for i, (exploration, exploitation) in enumerate(trace)],
        columns=DIVERSITY_COLUMNS,
    )
    return _write_frame(frame, path)


def read_diversity(path: PathLike) -> List[Tuple[int, float, float]]:
    frame = _read_frame(path)
    return [
        (int(i), float(a), float(b))
        for i, a, b in zip(frame["iteration"], frame["exploration_pct"], frame["exploitation_pct"])
    ]


def write_summary(summaries: Dict[str, Dict[str, SummaryRow]], path: PathLike) -> Path:
    """One row per (problem, algorithm); absent statistics are left empty."""
    rows = []
    for problem, by_algorithm in summaries.items():
        for algorithm, row in by_algorithm.items():
            rows.append({"problem": problem, "algorithm": algorithm, **row.model_dump()})
    return _write_frame(pd.DataFrame(rows, columns=SUMMARY_COLUMNS), path)


def read_summary(path: PathLike) -> Dict[str, Dict[str, SummaryRow]]:
    frame = _read_frame(path)
    summaries: Dict[str, Dict[str, SummaryRow]] = {}
    for record in frame.to_dict(orient="records"):
        values = {
            key: (None if isinstance(record[key], float) and math.isnan(record[key]) else float(record[key]))
            for key in ("mean", "std", "best")
        }
        summaries.setdefault(str(record["problem"]), {})[str(record["algorithm"])] = SummaryRow(
            success=float(record["success"]),
            runs=int(record["runs"]),
            **values,
        )
    return summaries


def write_report_csv(report: StatReport, path: PathLike) -> Path:
    rows = []
    for problem in report.problems:
        for algorithm in report.algorithms:
            summary = report.summaries[problem][algorithm]
            pairwise = report.pairwise[problem].get(algorithm)
            rows.append(
                {
                    "problem": problem,
                    "algorithm": algorithm,
                    "mean": summary.mean,
                    "std": summary.std,
                    "best": summary.best,
                    "success": summary.success,
                    "kruskal_mean_rank": report.kruskal[problem][algorithm],
                    "p_value": pairwise.p_value if pairwise else None,
                    "mark": pairwise.mark.value if pairwise else "",
                    "friedman_mean_rank": report.friedman_mean_rank[algorithm],
                    "friedman_rank": report.friedman_rank[algorithm],
                }
            )
    return _write_frame(pd.DataFrame(rows, columns=REPORT_COLUMNS), path)


def _cell(value) -> str:
    if value is None:
        return "NaN"
    return f"{value:.6g}"


def format_report(report: StatReport) -> str:
    """Aligned table: one block per problem with Mean, Std, Best, Success, Kruskal and the mark column."""
    labels = ["Mean", "Std", "Best", "Success", "Kruskal", "p-value"]
    header = ["Problem", "Metric"] + report.algorithms
    table: List[List[str]] = []
    for problem in report.problems:
        for label in labels:
            row = [problem if label == "Mean" else "", label]
            for algorithm in report.algorithms:
                summary = report.summaries[problem][algorithm]
                if label == "Kruskal":
                    row.append(_cell(report.kruskal[problem][algorithm]))
                elif label == "p-value":
                    pairwise = report.pairwise[problem].get(algorithm)
                    row.append(f"{pairwise.p_value:.4g} {pairwise.mark.value}" if pairwise else "-")
                else:
                    row.append(_cell(getattr(summary, label.lower())))
            table.append(row)
    table.append(["", "FMR"] + [_cell(report.friedman_mean_rank[a]) for a in report.algorithms])
    table.append(["", "F-Rank"] + [str(report.friedman_rank[a]) for a in report.algorithms])

    widths = [max(len(r[c]) for r in [header] + table) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in [header] + table]
    lines.append("")
    lines.append(f"Reference: {report.reference}  (+ better, - worse, ≈ no significant difference)")
    if report.friedman_p_value is not None:
        lines.append(f"Friedman p-value: {report.friedman_p_value:.6g}")
    return "\n".join(lines) + "\n"


def write_report_text(report: StatReport, path: PathLike) -> Path:
    """Terminal rendering of the report; report.csv stays the machine-readable copy."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_report(report), encoding="utf-8")
    return path
