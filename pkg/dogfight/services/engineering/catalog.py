"""Problem registry for the engineering suite, addressed by id R1..R10."""

import logging
from typing import Callable, Dict, List, Optional, Tuple

from dogfight.core.errors import UnknownNameError
from dogfight.models.engineering import ProblemInfo
from dogfight.models.params import PenaltyConfig

from .base import ConstrainedProblem
from .gearbox import gearbox
from .problems import (
    alkylation,
    process_flow_sheeting,
    pressure_vessel,
    refrigeration,
    side_impact,
    step_cone_pulley,
    thrust_bearing,
    welded_beam,
)
from .windfarm import wind_farm

logger = logging.getLogger(__name__)

Builder = Callable[..., ConstrainedProblem]

_BUILDERS: Dict[str, Builder] = {
    "R1": alkylation,
    "R2": process_flow_sheeting,
    "R3": welded_beam,
    "R4": pressure_vessel,
    "R5": side_impact,
    "R6": refrigeration,
    "R7": step_cone_pulley,
    "R8": thrust_bearing,
    "R9": gearbox,
    "R10": wind_farm,
}

PROBLEM_CATALOG: Dict[str, ProblemInfo] = {
    "R1": ProblemInfo(
        problem_id="R1",
        title="Optimal operation of alkylation unit",
        dimension=7,
        inequality_count=14,
        best_known=-4529.12,
        oracle=(2000.0, 0.0, 2576.38006, 0.0, 58.1606111, 1.25994095, 41.5998808),
    ),
    "R2": ProblemInfo(
        problem_id="R2",
        title="Process flow sheeting",
        dimension=3,
        inequality_count=3,
        best_known=1.0765431,
        oracle=(0.94193734, -2.1, 0.75209273),
    ),
    "R3": ProblemInfo(
        problem_id="R3",
        title="Welded beam design",
        dimension=4,
        inequality_count=7,
        best_known=1.6952472,
        oracle=(0.20572964, 3.25312004, 9.03662391, 0.20572964),
    ),
    "R4": ProblemInfo(
        problem_id="R4",
        title="Pressure vessel design",
        dimension=4,
        inequality_count=4,
        best_known=6059.7143,
        oracle=(12.7927137, 7.31679176, 42.0984456, 176.636596),
    ),
    "R5": ProblemInfo(
        problem_id="R5",
        title="Side impact design of automobiles",
        dimension=11,
        inequality_count=10,
        best_known=20.730404,
        # published x8 and x9 are relaxed; replaced by their snapped values
        oracle=(0.5, 0.97984709, 0.5, 1.00244987, 0.5, 0.5, 0.5, 0.345, 0.192, 30.0, 23.0333313),
        objective_only=True,
    ),
    "R6": ProblemInfo(
        problem_id="R6",
        title="Optimal design of industrial refrigeration system",
        dimension=14,
        inequality_count=15,
        best_known=0.032213,
        oracle=(0.001,) * 6 + (1.524, 1.524, 5.0, 2.0, 0.001, 0.001, 0.0072934, 0.08755583),
    ),
    "R7": ProblemInfo(
        problem_id="R7",
        title="Step-cone pulley",
        dimension=5,
        inequality_count=8,
        equality_count=3,
        best_known=16.090273,
        oracle=(38.4139618, 52.8586378, 70.4726957, 84.4957161, 90.0),
    ),
    "R8": ProblemInfo(
        problem_id="R8",
        title="Hydro-static thrust bearing design",
        dimension=4,
        inequality_count=7,
        best_known=1616.1204,
        oracle=(5.95551185, 5.38871638, 5.3587e-6, 2.25664104),
    ),
    "R9": ProblemInfo(
        problem_id="R9",
        title="Four-stage gear box",
        dimension=22,
        inequality_count=86,
        best_known=35.359232,
    ),
    "R10": ProblemInfo(
        problem_id="R10",
        title="Wind farm layout",
        dimension=30,
        inequality_count=91,
        best_known=-6262.972,
    ),
}


def available_problems() -> List[str]:
    return sorted(PROBLEM_CATALOG, key=lambda pid: int(pid[1:]))


def make_problem(
    problem_id: str,
    penalty: Optional[PenaltyConfig] = None,
    epsilon: Optional[float] = None,
) -> ConstrainedProblem:
    """
    Build an engineering problem by id.

    Args:
        problem_id: One of R1..R10
        penalty: Penalty weight and offset; settings defaults when omitted
        epsilon: Equality tolerance; settings default when omitted

    Returns:
        ConstrainedProblem ready for any optimizer
    """
    if problem_id not in _BUILDERS:
        raise UnknownNameError("engineering problem", problem_id, _BUILDERS)
    logger.debug(f"Building engineering problem {problem_id}")
    return _BUILDERS[problem_id](penalty=penalty, epsilon=epsilon)


def evaluate_raw(problem_id: str, x) -> Tuple[float, List[float], List[float]]:
    """Objective and signed constraints of the named problem at x."""
    evaluation = make_problem(problem_id).evaluate_raw(x)
    return evaluation.f, evaluation.g, evaluation.h
