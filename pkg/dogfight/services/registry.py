"""Name resolution for problems and algorithms used by batteries and the CLI."""

import logging
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError

from dogfight.core.errors import ConfigurationError, UnknownNameError
from dogfight.core.primitives import budget_for_dimension
from dogfight.core.problem import Problem
from dogfight.models.experiment import AlgorithmSpec, ExperimentConfig, ProblemKind, ProblemSelector
from dogfight.models.params import DosParams, PsoParams
from dogfight.models.problem import Budget, RunRecord
from dogfight.services.baselines import PSO_NAME, RANDOM_SEARCH_NAME, pso_optimize, random_search
from dogfight.services.benchmarks import FUNCTIONS, make_function
from dogfight.services.dos import dos_optimize
from dogfight.services.dos.optimizer import ALGORITHM_NAME as DOS_NAME
from dogfight.services.engineering import PROBLEM_CATALOG, make_problem
from dogfight.services.pathplan import ZONE_PRESETS, PathPlanningProblem, generate_terrain, zone_preset

logger = logging.getLogger(__name__)


def _run_dos(problem: Problem, params: Dict[str, Any], budget: Budget, seed: int, record_history: bool) -> RunRecord:
    return dos_optimize(problem, DosParams(**params), budget, seed, record_history=record_history)


def _run_pso(problem: Problem, params: Dict[str, Any], budget: Budget, seed: int, record_history: bool) -> RunRecord:
    return pso_optimize(problem, PsoParams(**params), budget, seed, record_history=record_history)


class _RandomSearchParams(BaseModel):
    batch_size: int = Field(default=50, ge=1)


def _run_random(problem: Problem, params: Dict[str, Any], budget: Budget, seed: int, record_history: bool) -> RunRecord:
    validated = _RandomSearchParams(**params)
    return random_search(problem, budget, seed, record_history=record_history, **validated.model_dump())


Runner = Callable[[Problem, Dict[str, Any], Budget, int, bool], RunRecord]

ALGORITHMS: Dict[str, Runner] = {
    DOS_NAME: _run_dos,
    PSO_NAME: _run_pso,
    RANDOM_SEARCH_NAME: _run_random,
}

_PARAM_MODELS = {
    DOS_NAME: DosParams,
    PSO_NAME: PsoParams,
    RANDOM_SEARCH_NAME: _RandomSearchParams,
}


def available_algorithms() -> List[str]:
    return list(ALGORITHMS)


def resolve_problem(selector: ProblemSelector) -> Problem:
    """Build the problem a selector points to."""
    if selector.kind == ProblemKind.BENCHMARK:
        return make_function(selector.name, selector.dimension)
    if selector.kind == ProblemKind.ENGINEERING:
        return make_problem(selector.name)
    zones = zone_preset(selector.name) if selector.name else []
    return PathPlanningProblem(
        terrain=generate_terrain(seed=selector.terrain_seed),
        zones=zones,
        name=selector.label,
    )


def resolve_budget(problem: Problem, max_evaluations: Optional[int] = None) -> Budget:
    if max_evaluations is None:
        return budget_for_dimension(problem.dimension)
    return Budget(max_evaluations=max_evaluations)


def run_algorithm(
    name: str,
    problem: Problem,
    budget: Budget,
    seed: int,
    params: Optional[Dict[str, Any]] = None,
    record_history: bool = False,
) -> RunRecord:
    if name not in ALGORITHMS:
        raise UnknownNameError("algorithm", name, ALGORITHMS)
    record = ALGORITHMS[name](problem, dict(params or {}), budget, seed, record_history)
    return record.model_copy(update={"problem": problem.name})


def validate_experiment(config: ExperimentConfig) -> None:
    """
    Check every name and parameter override before any run starts.

    Raises:
        UnknownNameError: A problem, zone preset or algorithm is not registered
        ConfigurationError: Parameter overrides do not validate
    """
    for selector in config.problems:
        if selector.kind == ProblemKind.BENCHMARK and selector.name not in FUNCTIONS:
            raise UnknownNameError("benchmark function", selector.name, FUNCTIONS)
        if selector.kind == ProblemKind.ENGINEERING and selector.name not in PROBLEM_CATALOG:
            raise UnknownNameError("engineering problem", selector.name, PROBLEM_CATALOG)
        if selector.kind == ProblemKind.PATHPLAN and selector.name and selector.name not in ZONE_PRESETS:
            raise UnknownNameError("zone preset", selector.name, ZONE_PRESETS)
    for spec in config.algorithms:
        _validate_algorithm(spec)
    labels = [s.label for s in config.problems]
    if len(set(labels)) != len(labels):
        raise ConfigurationError(f"problems must be distinct, got {labels}")


def _validate_algorithm(spec: AlgorithmSpec) -> None:
    if spec.name not in ALGORITHMS:
        raise UnknownNameError("algorithm", spec.name, ALGORITHMS)
    model = _PARAM_MODELS[spec.name]
    unknown = set(spec.params) - set(model.model_fields)
    if unknown:
        raise ConfigurationError(f"{spec.name} has no parameters {sorted(unknown)}")
    try:
        model(**spec.params)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid {spec.name} parameters: {exc}") from exc
