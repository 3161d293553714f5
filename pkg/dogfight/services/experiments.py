"""Experiment files: flat INI sections parsed into an ExperimentConfig."""

import configparser
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from dogfight.core.errors import ConfigurationError
from dogfight.models.experiment import AlgorithmSpec, ExperimentConfig, ProblemKind, ProblemSelector

logger = logging.getLogger(__name__)

EXPERIMENT_SECTION = "experiment"
PROBLEMS_SECTION = "problems"
ALGORITHMS_SECTION = "algorithms"
_RESERVED = {EXPERIMENT_SECTION, PROBLEMS_SECTION, ALGORITHMS_SECTION}


def _split_list(value: str) -> List[str]:
    return [item.strip() for item in value.replace("\n", ",").split(",") if item.strip()]


def parse_experiment(
    text: str,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Parse experiment text.

    [experiment] holds scalar settings, [problems] and [algorithms] each hold a
    comma-separated ``list``, and a section named after an algorithm holds its
    parameter overrides.

    Args:
        text: INI content
        overrides: Values that replace file values; ``dimension``,
            ``terrain_seed`` and ``zones`` apply to the problem selectors

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigurationError: Missing sections, bad selectors or invalid values
    """
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"unreadable experiment file: {exc}") from exc

    for section in (PROBLEMS_SECTION, ALGORITHMS_SECTION):
        if not parser.has_option(section, "list"):
            raise ConfigurationError(f"experiment file needs a [{section}] section with a 'list' entry")

    fields: Dict[str, Any] = dict(parser.items(EXPERIMENT_SECTION)) if parser.has_section(EXPERIMENT_SECTION) else {}
    terrain_seed = overrides.pop("terrain_seed", fields.pop("terrain_seed", None))
    dimension = overrides.pop("dimension", None)
    zones = overrides.pop("zones", None)

    try:
        problems = [
            ProblemSelector.parse(
                item,
                dimension=dimension,
                terrain_seed=int(terrain_seed) if terrain_seed is not None else None,
            )
            for item in _split_list(parser.get(PROBLEMS_SECTION, "list"))
        ]
        if zones is not None:
            problems = [
                p.model_copy(update={"name": zones}) if p.kind == ProblemKind.PATHPLAN else p for p in problems
            ]
        algorithms = [
            AlgorithmSpec(name=name, params=dict(parser.items(name)) if parser.has_section(name) else {})
            for name in _split_list(parser.get(ALGORITHMS_SECTION, "list"))
        ]
        stray = set(parser.sections()) - _RESERVED - {a.name for a in algorithms}
        if stray:
            raise ConfigurationError(f"sections {sorted(stray)} match no listed algorithm")
        fields.update(overrides)
        return ExperimentConfig(problems=problems, algorithms=algorithms, **fields)
    except (ValidationError, ValueError) as exc:
        raise ConfigurationError(f"invalid experiment: {exc}") from exc


def load_experiment(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"experiment file {path} does not exist")
    logger.debug(f"Loading experiment from {path}")
    return parse_experiment(path.read_text(encoding="utf-8"), overrides)
