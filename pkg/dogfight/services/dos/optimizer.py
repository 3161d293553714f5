"""Dogfight Search driver: state, one full iteration, and the run loop."""

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from dogfight.core.errors import BudgetError
from dogfight.core.evaluation import Evaluator
from dogfight.core.primitives import budget_for_dimension, clamp_to_bounds, round_half_up, seeded_rng
from dogfight.core.problem import Problem
from dogfight.models.params import DosParams
from dogfight.models.problem import Budget, RunRecord

from .formation import EVASIVE, OFFENSIVE, Archive, Formation, PromisingSet, Strategy, VelocityTriple
from .kinematics import (
    flare_evasion_step,
    flight_duration,
    free_flight_step,
    head_guidance,
    leader_count,
    maneuver_evasion_step,
    maneuver_lockon_step,
    missile_attack_step,
    update_velocity_bounds,
)
from .selection import (
    select_strategy_regular_leader,
    select_strategy_stealth_leader,
    select_strategy_wing,
    update_prob_coefficient,
)

logger = logging.getLogger(__name__)

ALGORITHM_NAME = "DoS"


@dataclass
class Assignment:
    """Strategies and leaders used in one iteration, in pre-sort rank order."""

    iteration: int
    leader_count: int
    strategies_x: np.ndarray
    strategies_y: np.ndarray
    leaders_x: np.ndarray
    leaders_y: np.ndarray


@dataclass
class DosState:
    """Full algorithm state between iterations."""

    params: DosParams
    formation_x: Formation
    formation_y: Formation
    archive: Archive
    velocity: float
    triple: VelocityTriple
    max_iterations: int
    t: int = 0
    leader_count: int = 1
    last_assignment: Optional[Assignment] = None
    history: Optional[List[np.ndarray]] = None

    def positions(self) -> np.ndarray:
        return np.vstack([self.formation_x.positions, self.formation_y.positions])

    def record_positions(self) -> None:
        if self.history is not None:
            self.history.append(self.positions().copy())


def max_iterations(budget: Budget, swarm_size: int) -> int:
    return max(1, math.ceil((budget.max_evaluations - swarm_size) / swarm_size))


def archive_capacity(params: DosParams) -> int:
    return max(1, round_half_up(2.5 * params.swarm_size))


def initialize_formations(
    problem: Problem,
    params: DosParams,
    rng,
    evaluator: Optional[Evaluator] = None,
) -> Tuple[Formation, Formation]:
    """
    Split the box at its midpoint and seed one formation in each half.

    Args:
        problem: Target problem; its bounds must be finite
        params: DoS hyperparameters
        rng: Random stream
        evaluator: Budget accountant; evaluates directly through the problem when omitted

    Returns:
        The stealth formation X (lower half) and the regular formation Y (upper half), sorted
    """
    n = params.formation_size
    d = problem.dimension
    lower = problem.bounds.lower_array()
    upper = problem.bounds.upper_array()
    mid = problem.bounds.midpoint()

    x = lower + (mid - lower) * rng.random((n, d))
    y = mid + (upper - mid) * rng.random((n, d))

    if evaluator is not None:
        fx = evaluator.evaluate_many(x)
        fy = evaluator.evaluate_many(y)
    else:
        fx = np.array([problem.fitness(row) for row in x])
        fy = np.array([problem.fitness(row) for row in y])

    formation_x = Formation(x, fx, prob=params.initial_probability)
    formation_y = Formation(y, fy, prob=params.initial_probability)
    formation_x.sort()
    formation_y.sort()
    return formation_x, formation_y


LeaderRule = Callable[[int, int, float, DosParams, object], Strategy]


def _assign_strategies(
    formation: Formation,
    leader_rule: LeaderRule,
    t: int,
    T: int,
    params: DosParams,
    rng,
) -> Tuple[np.ndarray, np.ndarray]:
    p = formation.leader_count
    strategies = np.empty(formation.size, dtype=int)
    leaders = np.arange(formation.size)
    for i in range(p):
        strategies[i] = int(leader_rule(t, T, formation.prob, params, rng))
    for i in range(p, formation.size):
        leaders[i] = int(rng.integers(0, p))
        strategies[i] = int(select_strategy_wing(strategies[leaders[i]], formation.prob, rng))
    return strategies, leaders


def _plan_moves(
    formation: Formation,
    opposing: Formation,
    strategies: np.ndarray,
    leaders: np.ndarray,
    state: DosState,
    problem: Problem,
    rng,
) -> Tuple[np.ndarray, np.ndarray]:
    """New positions and applied speeds for one formation, without mutating it."""
    bounds = problem.bounds
    v = state.triple
    new_positions = np.empty_like(formation.positions)
    speeds = np.empty(formation.size)
    for i in range(formation.size):
        u_head = head_guidance(formation, state.archive, state.params, rng)
        dxi = flight_duration(rng)
        strategy = strategies[i]
        if strategy == Strategy.FREE_FLIGHT:
            point, speed = free_flight_step(i, formation, leaders[i], u_head, v, dxi, bounds, rng)
        elif strategy == Strategy.MANEUVER_LOCKON:
            point, speed = maneuver_lockon_step(i, formation, opposing, u_head, v, dxi, rng)
        elif strategy == Strategy.MISSILE_ATTACK:
            point, speed = missile_attack_step(i, formation, opposing, u_head, v, dxi, rng)
        elif strategy == Strategy.MANEUVER_EVASION:
            point, speed = maneuver_evasion_step(
                i, formation, state.archive, state.params, u_head, v, dxi, rng
            )
        else:
            point, speed = flare_evasion_step(i, formation, bounds, u_head, v, dxi, rng)
        new_positions[i] = clamp_to_bounds(point, bounds)
        speeds[i] = speed
    return new_positions, speeds


def _absorb(
    formation: Formation,
    new_positions: np.ndarray,
    new_fitness: np.ndarray,
    strategies: np.ndarray,
    speeds: np.ndarray,
    evaluated: int,
    archive: Archive,
    promising: PromisingSet,
    t: int,
    T: int,
    greedy: bool = True,
) -> None:
    """
    Record improvements, update the probability coefficient and replace positions.

    With ``greedy`` a move that worsens its solution is dropped and the old
    position stays; ties are accepted so flat regions keep moving.
    """
    ranks = np.arange(1, formation.size + 1)
    improved = np.zeros(formation.size, dtype=bool)
    for i in range(evaluated):
        previous = formation.fitness[i]
        if new_fitness[i] < previous:
            improved[i] = True
            archive.push(new_positions[i], new_fitness[i], previous)
            promising.add(speeds[i], previous - new_fitness[i])

    offensive = np.isin(strategies, OFFENSIVE)
    evasive = np.isin(strategies, EVASIVE)
    formation.prob = update_prob_coefficient(
        formation.prob,
        ranks[offensive].tolist(),
        ranks[evasive].tolist(),
        ranks[offensive & improved].tolist(),
        ranks[evasive & improved].tolist(),
        t,
        T,
    )

    # rows past the budget cut keep their old position and fitness
    rows = np.zeros(formation.size, dtype=bool)
    rows[:evaluated] = True
    if greedy:
        rows[:evaluated] &= new_fitness[:evaluated] <= formation.fitness[:evaluated]
    formation.positions[rows] = new_positions[rows]
    formation.fitness[rows] = new_fitness[rows]
    formation.strategy[rows] = strategies[rows]
    formation.applied_speed[rows] = speeds[rows]


def dos_iterate(state: DosState, problem: Problem, rng, evaluator: Optional[Evaluator] = None) -> DosState:
    """Advance the state by one full iteration of both formations."""
    t = state.t + 1
    T = state.max_iterations
    params = state.params
    x_form, y_form = state.formation_x, state.formation_y

    p = leader_count(params, rng)
    state.leader_count = p
    x_form.leader_count = p
    y_form.leader_count = p

    strategies_x, leaders_x = _assign_strategies(x_form, select_strategy_stealth_leader, t, T, params, rng)
    new_x, speeds_x = _plan_moves(x_form, y_form, strategies_x, leaders_x, state, problem, rng)
    strategies_y, leaders_y = _assign_strategies(y_form, select_strategy_regular_leader, t, T, params, rng)
    new_y, speeds_y = _plan_moves(y_form, x_form, strategies_y, leaders_y, state, problem, rng)

    if evaluator is not None:
        before = evaluator.count
        fx = evaluator.evaluate_many(new_x)
        evaluated_x = evaluator.count - before
        before = evaluator.count
        fy = evaluator.evaluate_many(new_y)
        evaluated_y = evaluator.count - before
    else:
        fx = np.array([problem.fitness(row) for row in new_x])
        fy = np.array([problem.fitness(row) for row in new_y])
        evaluated_x, evaluated_y = len(fx), len(fy)

    promising = PromisingSet()
    greedy = params.greedy_replacement
    _absorb(x_form, new_x, fx, strategies_x, speeds_x, evaluated_x, state.archive, promising, t, T, greedy)
    _absorb(y_form, new_y, fy, strategies_y, speeds_y, evaluated_y, state.archive, promising, t, T, greedy)

    state.velocity, state.triple = update_velocity_bounds(state.velocity, promising, params, rng)

    x_form.sort()
    y_form.sort()

    state.last_assignment = Assignment(
        iteration=t,
        leader_count=p,
        strategies_x=strategies_x,
        strategies_y=strategies_y,
        leaders_x=leaders_x,
        leaders_y=leaders_y,
    )
    state.t = t
    state.record_positions()
    return state


class DosOptimizer:
    """Stateful Dogfight Search run with an initialize / step / run surface."""

    def __init__(
        self,
        problem: Problem,
        params: Optional[DosParams] = None,
        budget: Optional[Budget] = None,
        seed: int = 0,
        rng: Optional[np.random.Generator] = None,
        record_history: bool = False,
    ):
        self.problem = problem
        self.params = params or DosParams()
        if budget is None:
            budget = budget_for_dimension(problem.dimension)
        if not budget.fits(self.params.swarm_size):
            raise BudgetError(
                f"budget of {budget.max_evaluations} evaluations is below the swarm size {self.params.swarm_size}"
            )
        self.budget = budget
        self.seed = seed
        self.rng = rng if rng is not None else seeded_rng(seed)
        self.record_history = record_history
        self.evaluator = Evaluator(problem, budget, population_size=self.params.swarm_size)
        self.state: Optional[DosState] = None

    def initialize(self) -> DosState:
        formation_x, formation_y = initialize_formations(self.problem, self.params, self.rng, self.evaluator)
        velocity = self.params.initial_velocity
        self.state = DosState(
            params=self.params,
            formation_x=formation_x,
            formation_y=formation_y,
            archive=Archive(archive_capacity(self.params), self.problem.dimension),
            velocity=velocity,
            triple=VelocityTriple.from_speed(velocity, self.params.k5),
            max_iterations=max_iterations(self.budget, self.params.swarm_size),
            history=[] if self.record_history else None,
        )
        self.state.record_positions()
        return self.state

    def step(self) -> DosState:
        if self.state is None:
            self.initialize()
        return dos_iterate(self.state, self.problem, self.rng, self.evaluator)

    def run(self) -> RunRecord:
        logger.debug(
            f"DoS on {self.problem.name}: N={self.params.swarm_size}, "
            f"E={self.budget.max_evaluations}, seed={self.seed}"
        )
        started = time.perf_counter()
        if self.state is None:
            self.initialize()
        while not self.evaluator.exhausted:
            self.step()
        elapsed = time.perf_counter() - started

        diversity = None
        if self.record_history:
            from dogfight.services.benchmarks import diversity_trace

            diversity = diversity_trace(self.state.history)
        if self.evaluator.truncated:
            logger.debug(f"Final DoS iteration truncated at {self.evaluator.count} evaluations")
        logger.debug(
            f"DoS finished on {self.problem.name} after {self.state.t} iterations: best={self.evaluator.best_value:.6g}"
        )
        return self.evaluator.finish(self.seed, ALGORITHM_NAME, elapsed, diversity=diversity)

    def position_history(self) -> List[np.ndarray]:
        if self.state is None or self.state.history is None:
            return []
        return self.state.history


def dos_optimize(
    problem: Problem,
    params: Optional[DosParams] = None,
    budget: Optional[Budget] = None,
    seed: int = 0,
    record_history: bool = False,
) -> RunRecord:
    """Run Dogfight Search to budget exhaustion and return the best-so-far record."""
    return DosOptimizer(problem, params, budget, seed, record_history=record_history).run()
