"""Nonparametric comparison statistics and run summaries.

Infeasible runs enter rank tests as +inf so sample sizes are preserved and
failures rank worst.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import stats as sps

from dogfight.config import settings
from dogfight.models.problem import RunRecord
from dogfight.models.report import Mark, PairwiseResult, StatReport, SummaryRow

logger = logging.getLogger(__name__)

EXACT_LIMIT = 8


def _mark(p_value: float, reference_better: bool, alpha: float) -> Mark:
    if p_value >= alpha:
        return Mark.TIE
    return Mark.BETTER if reference_better else Mark.WORSE


def _exact_rank_sum_p(ranks: np.ndarray, n_a: int) -> float:
    """Two-sided p of the rank sum of the first n_a ranks over every assignment of the pooled ranks."""
    doubled = np.rint(2.0 * ranks).astype(int)
    observed = int(doubled[:n_a].sum())
    total = int(doubled.sum())
    # counts[k, s]: subsets of size k with doubled rank sum s
    counts = np.zeros((n_a + 1, total + 1))
    counts[0, 0] = 1.0
    for value in doubled:
        counts[1:, value:] = counts[1:, value:] + counts[:-1, : total + 1 - value]
    distribution = counts[n_a]
    centre = n_a * total / doubled.size
    sums = np.arange(total + 1)
    extreme = np.abs(sums - centre) >= abs(observed - centre) - 1e-9
    return float(min(1.0, distribution[extreme].sum() / distribution.sum()))


def _normal_rank_sum_p(ranks: np.ndarray, n_a: int) -> float:
    n_b = ranks.size - n_a
    n = ranks.size
    u = ranks[:n_a].sum() - n_a * (n_a + 1) / 2.0
    _, ties = np.unique(ranks, return_counts=True)
    tie_term = np.sum(ties**3 - ties) / (n * (n - 1))
    variance = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if variance <= 0.0:
        return 1.0
    z = (abs(u - n_a * n_b / 2.0) - 0.5) / math.sqrt(variance)
    return float(min(1.0, 2.0 * sps.norm.sf(max(z, 0.0))))


def signed_rank_test(
    a: Sequence[float], b: Sequence[float], alpha: float = settings.SIGNIFICANCE_LEVEL
) -> Tuple[float, Mark]:
    """Paired Wilcoxon signed-rank test with the same mark convention as the rank-sum test."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.size == 0:
        raise ValueError("paired samples must be non-empty and of equal length")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        pooled = sps.rankdata(np.concatenate([a, b]))
        a, b = pooled[: a.size], pooled[a.size :]
    differences = a - b
    if np.all(differences == 0.0):
        return 1.0, Mark.TIE
    p_value = float(sps.wilcoxon(a, b, zero_method="wilcox", alternative="two-sided").pvalue)
    return p_value, _mark(p_value, float(np.median(differences)) < 0.0, alpha)


def rank_sum_test(
    a: Sequence[float],
    b: Sequence[float],
    paired: bool = False,
    alpha: float = settings.SIGNIFICANCE_LEVEL,
) -> Tuple[float, Mark]:
    """
    Two-sided Wilcoxon rank-sum test of a (reference) against b.

    Exact when the smaller sample has at most 8 values, otherwise the normal
    approximation with tie-corrected variance and continuity correction.

    Args:
        a: Reference sample, lower is better
        b: Competitor sample
        paired: Use the signed-rank test on paired runs instead
        alpha: Significance level

    Returns:
        (p_value, mark) where '+' means a is significantly better
    """
    if paired:
        return signed_rank_test(a, b, alpha)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("rank-sum test needs two non-empty samples")
    ranks = sps.rankdata(np.concatenate([a, b]))
    if min(a.size, b.size) <= EXACT_LIMIT:
        p_value = _exact_rank_sum_p(ranks, a.size)
    else:
        p_value = _normal_rank_sum_p(ranks, a.size)
    reference_better = ranks[: a.size].mean() < ranks[a.size :].mean()
    return p_value, _mark(p_value, reference_better, alpha)


def friedman_ranks(matrix) -> Tuple[np.ndarray, np.ndarray]:
    """Friedman mean rank per algorithm (columns) over problems (rows) and the final ordinal rank."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.shape[1] < 2:
        raise ValueError("friedman ranking needs at least two algorithms")
    ranks = np.vstack([sps.rankdata(row) for row in matrix])
    mean_ranks = ranks.mean(axis=0)
    final = sps.rankdata(mean_ranks, method="ordinal").astype(int)
    return mean_ranks, final


def friedman_test(matrix) -> Tuple[float, float]:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.shape[1] < 3:
        raise ValueError("the Friedman chi-square test needs at least three algorithms")
    if matrix.shape[0] < 2:
        raise ValueError("the Friedman chi-square test needs at least two problems")
    result = sps.friedmanchisquare(*matrix.T)
    return float(result.statistic), float(result.pvalue)


def kruskal_mean_ranks(samples: Sequence[Sequence[float]]) -> List[float]:
    if len(samples) < 2 or any(len(s) == 0 for s in samples):
        raise ValueError("kruskal ranking needs at least two non-empty samples")
    pooled = sps.rankdata(np.concatenate([np.asarray(s, dtype=float) for s in samples]))
    means = []
    start = 0
    for sample in samples:
        means.append(float(pooled[start : start + len(sample)].mean()))
        start += len(sample)
    return means


def kruskal_test(samples: Sequence[Sequence[float]]) -> Tuple[float, float]:
    try:
        result = sps.kruskal(*[np.asarray(s, dtype=float) for s in samples])
    except ValueError:
        # every value identical
        return 0.0, 1.0
    if not math.isfinite(result.pvalue):
        return 0.0, 1.0
    return float(result.statistic), float(result.pvalue)


def summarize(runs: Sequence[RunRecord]) -> SummaryRow:
    """Mean, Std (n-1 divisor) and Best over feasible runs, and the feasible fraction."""
    if len(runs) == 0:
        raise ValueError("cannot summarize an empty list of runs")
    values = np.array([r.best_value for r in runs if r.feasible and math.isfinite(r.best_value)])
    success = len(values) / len(runs)
    if values.size == 0:
        return SummaryRow(success=0.0, runs=len(runs))
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return SummaryRow(
        mean=float(values.mean()),
        std=std,
        best=float(values.min()),
        success=success,
        runs=len(runs),
    )


def final_values(runs: Sequence[RunRecord]) -> np.ndarray:
    """Per-run results for rank tests; infeasible runs become +inf."""
    return np.array([r.best_value if r.feasible else math.inf for r in runs], dtype=float)


def build_report(
    results: Dict[str, Dict[str, List[RunRecord]]],
    reference: str = None,
    paired: bool = False,
    alpha: float = settings.SIGNIFICANCE_LEVEL,
) -> StatReport:
    """
    Assemble summaries, pairwise marks, Kruskal and Friedman ranks.

    Args:
        results: {problem: {algorithm: runs}}, the same algorithms on every problem
        reference: Algorithm the others are tested against; the first one by default
        paired: Use the signed-rank test
        alpha: Significance level

    Returns:
        StatReport for the battery
    """
    if not results:
        raise ValueError("no results to report")
    problems = list(results)
    algorithms = list(results[problems[0]])
    reference = reference or algorithms[0]
    report = StatReport(reference=reference, algorithms=algorithms, problems=problems)

    means = np.full((len(problems), len(algorithms)), math.inf)
    for row, problem in enumerate(problems):
        by_algorithm = results[problem]
        if list(by_algorithm) != algorithms:
            raise ValueError(f"problem {problem} does not hold the same algorithms as {problems[0]}")
        report.summaries[problem] = {name: summarize(runs) for name, runs in by_algorithm.items()}
        samples = [final_values(by_algorithm[name]) for name in algorithms]
        report.kruskal[problem] = dict(zip(algorithms, kruskal_mean_ranks(samples)))

        reference_sample = final_values(by_algorithm[reference])
        report.pairwise[problem] = {}
        for name in algorithms:
            if name == reference:
                continue
            p_value, mark = rank_sum_test(reference_sample, final_values(by_algorithm[name]), paired, alpha)
            report.pairwise[problem][name] = PairwiseResult(algorithm=name, p_value=p_value, mark=mark)

        for col, name in enumerate(algorithms):
            mean = report.summaries[problem][name].mean
            if mean is not None:
                means[row, col] = mean

    mean_ranks, final = friedman_ranks(means)
    report.friedman_mean_rank = dict(zip(algorithms, mean_ranks.tolist()))
    report.friedman_rank = dict(zip(algorithms, final.tolist()))
    if len(algorithms) >= 3 and len(problems) >= 2:
        report.friedman_p_value = friedman_test(means)[1]
    logger.info(f"Report built for {len(problems)} problems and {len(algorithms)} algorithms")
    return report
