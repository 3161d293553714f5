"""Dogfight Search: strategy kinematics, selection rules and the iteration loop."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from dogfight.config import settings
from dogfight.core.errors import BudgetError
from dogfight.core.primitives import round_half_up
from dogfight.core.problem import Problem
from dogfight.models.params import DosParams
from dogfight.models.problem import Bounds, Budget
from dogfight.services.dos import (
    Archive,
    DosOptimizer,
    Formation,
    PromisingSet,
    Strategy,
    VelocityTriple,
    dos_iterate,
    dos_optimize,
    flare_boundary_point,
    flare_evasion_step,
    flight_duration,
    free_flight_step,
    head_guidance,
    initialize_formations,
    leader_count,
    maneuver_evasion_step,
    maneuver_lockon_step,
    missile_attack_step,
    select_strategy_regular_leader,
    select_strategy_stealth_leader,
    select_strategy_wing,
    update_prob_coefficient,
    update_velocity_bounds,
    wing_strategy_allowed,
)
from dogfight.services.dos.selection import free_flight_probability
from dogfight.services.benchmarks import make_function

from .conftest import ScriptedRng


def _formation(rows, leaders=1):
    positions = np.asarray(rows, dtype=float).reshape(len(rows), -1)
    return Formation(positions, np.arange(len(rows), dtype=float), leader_count=leaders)


class TestParams:
    def test_defaults(self):
        params = DosParams()
        assert (params.swarm_size, params.k1, params.k2, params.k3, params.k4, params.k5) == (
            50, 0.3, -2.5, 0.2, 0.05, 0.5,
        )
        assert params.formation_size == 25
        assert params.greedy_replacement

    @pytest.mark.parametrize("overrides", [{"swarm_size": 5}, {"swarm_size": 2}, {"k1": 0.5}])
    def test_rejects_invalid(self, overrides):
        with pytest.raises(ValidationError):
            DosParams(**overrides)


class TestInitialization:
    problem = Problem("line", Bounds(lower=(0.0,), upper=(10.0,)), lambda x: float(x[0]))

    def test_halves(self):
        rng = np.random.default_rng(0)
        x, y = initialize_formations(self.problem, DosParams(swarm_size=20), rng)
        assert np.all((x.positions >= 0.0) & (x.positions <= 5.0))
        assert np.all((y.positions >= 5.0) & (y.positions <= 10.0))

    def test_zero_draws(self):
        x, y = initialize_formations(self.problem, DosParams(swarm_size=4), ScriptedRng(fallback=0.0))
        assert np.all(x.positions == 0.0)
        assert np.all(y.positions == 5.0)

    def test_unit_draws(self):
        x, y = initialize_formations(self.problem, DosParams(swarm_size=4), ScriptedRng(fallback=1.0))
        assert np.all(x.positions == 5.0)
        assert np.all(y.positions == 10.0)

    def test_sorted_by_fitness(self):
        x, y = initialize_formations(self.problem, DosParams(swarm_size=20), np.random.default_rng(1))
        assert np.all(np.diff(x.fitness) >= 0.0)
        assert np.all(np.diff(y.fitness) >= 0.0)


class TestLeaderCount:
    def test_lower_endpoint(self):
        assert leader_count(DosParams(), ScriptedRng([0.0])) == 8

    def test_upper_endpoint(self):
        assert leader_count(DosParams(), ScriptedRng([1.0])) == 13

    @pytest.mark.parametrize("r1", [0.0, 0.3, 0.7, 1.0])
    def test_small_swarm_clamped(self, r1):
        assert leader_count(DosParams(swarm_size=4), ScriptedRng([r1])) == 1


class TestHeadGuidance:
    params = DosParams()

    def test_empty_archive(self):
        formation = _formation([[i] for i in range(25)])
        u = head_guidance(formation, Archive(125, 1), self.params, ScriptedRng())
        np.testing.assert_array_equal(u, [0.0])

    def test_top_index(self):
        formation = _formation([[float(i)] for i in range(25)])
        archive = Archive(125, 1)
        archive.push(np.array([0.0]), 0.0, 1.0)
        # NR = 5 for N = 50; r = 0.99 picks the fifth-ranked solution
        u = head_guidance(formation, archive, self.params, ScriptedRng([0.99, 0.5]))
        np.testing.assert_array_equal(u, [4.0])

    def test_self_difference(self):
        formation = _formation([[3.0]] * 25)
        archive = Archive(125, 1)
        archive.push(np.array([3.0]), 0.0, 1.0)
        u = head_guidance(formation, archive, self.params, ScriptedRng([0.0, 0.0]))
        np.testing.assert_array_equal(u, [0.0])


@pytest.mark.parametrize("r6, expected", [(0.0, 0.8), (1.0, 1.2), (0.5, 1.0)])
def test_flight_duration(r6, expected):
    assert flight_duration(ScriptedRng([r6])) == pytest.approx(expected)


class TestVelocityUpdate:
    params = DosParams()

    def test_single_record(self):
        promising = PromisingSet()
        promising.add(3.0, 4.0)
        velocity, triple = update_velocity_bounds(1.0, promising, self.params, ScriptedRng([0.5]))
        assert velocity == pytest.approx(3.0)
        assert triple == pytest.approx((1.5, 3.0, 1.25))

    def test_empty_keeps_velocity(self):
        velocity, triple = update_velocity_bounds(2.0, PromisingSet(), self.params, ScriptedRng([0.5]))
        assert velocity == 2.0
        assert triple == pytest.approx((1.0, 2.0, 1.0 / 1.2))

    def test_weighted_mean(self):
        promising = PromisingSet()
        promising.add(1.0, 1.0)
        promising.add(2.0, 1.0)
        velocity, _ = update_velocity_bounds(1.0, promising, self.params, ScriptedRng([0.5]))
        assert velocity == pytest.approx(2.5 / 1.5)

    def test_non_improving_records_ignored(self):
        promising = PromisingSet()
        promising.add(3.0, 0.0)
        promising.add(3.0, math.inf)
        assert len(promising) == 0

    @pytest.mark.parametrize("r5", [0.0, 1e-12, 0.999999, 1.0])
    def test_extreme_draws_stay_clamped(self, r5):
        _, triple = update_velocity_bounds(1.0, PromisingSet(), self.params, ScriptedRng([r5]))
        assert 0.0 < triple.v_min <= triple.v_max <= settings.DOS_VELOCITY_CEILING
        assert triple.accel == pytest.approx((triple.v_max - triple.v_min) / 1.2)

    def test_floor_holds_after_speed_ratio(self):
        r5 = 0.5 + 2.0 / math.pi * math.atan(-10.0)
        _, triple = update_velocity_bounds(1.0, PromisingSet(), self.params, ScriptedRng([r5]))
        assert triple.v_min >= settings.DOS_VELOCITY_FLOOR
        assert triple.v_max >= triple.v_min
        assert triple.accel == pytest.approx((triple.v_max - triple.v_min) / 1.2)

    @pytest.mark.parametrize(
        "speed, expected",
        [(1e-4, (1e-4, 1e-4, 0.0)), (3e-4, (1.5e-4, 3e-4, 1.5e-4 / 1.2)), (40.0, (10.0, 10.0, 0.0))],
    )
    def test_triple_clamped_at_both_ends(self, speed, expected):
        assert VelocityTriple.from_speed(speed, 0.5) == pytest.approx(expected)


class TestFreeFlight:
    bounds = Bounds(lower=(0.0,), upper=(10.0,))

    def test_leader_heads_for_random_point(self):
        formation = _formation([[0.0], [1.0]])
        v = VelocityTriple(0.1, 1.0, 0.75)
        point, speed = free_flight_step(0, formation, 0, np.array([1.0]), v, 1.0, self.bounds, ScriptedRng([0.5]))
        assert point[0] == pytest.approx(0.6)
        assert speed == pytest.approx(0.1)

    def test_zero_direction(self):
        formation = _formation([[5.0], [1.0]])
        v = VelocityTriple(0.3, 1.0, 0.5)
        point, _ = free_flight_step(0, formation, 0, np.array([0.0]), v, 1.1, self.bounds, ScriptedRng([0.5]))
        assert point[0] == pytest.approx(5.0)

    def test_wing_on_coincident_leader(self):
        formation = _formation([[2.0], [2.0]])
        v = VelocityTriple(0.3, 1.0, 0.5)
        point, _ = free_flight_step(1, formation, 0, np.array([0.0]), v, 1.0, self.bounds, ScriptedRng())
        assert point[0] == 2.0


class TestOffensive:
    def test_lockon_zero_acceleration(self):
        formation = _formation([[0.0]])
        opposing = _formation([[1.0]])
        _, speed = maneuver_lockon_step(0, formation, opposing, np.zeros(1), VelocityTriple(0.7, 0.7, 0.0), 1.1, ScriptedRng())
        assert speed == 0.7

    def test_lockon_prediction_collapses(self):
        formation = _formation([[0.0]])
        opposing = _formation([[4.0], [2.0]], leaders=2)
        v = VelocityTriple(1.0, 1.0, 0.0)
        for r8 in (0.0, 0.3, 1.0):
            point, _ = maneuver_lockon_step(0, formation, opposing, np.zeros(1), v, 1.0, ScriptedRng([r8, 0.0], [1]))
            assert point[0] == pytest.approx(2.0)

    def test_lockon_hand_example(self):
        formation = _formation([[0.0]])
        opposing = _formation([[4.0], [2.0]], leaders=2)
        v = VelocityTriple(1.0, 2.44, 1.2)
        point, speed = maneuver_lockon_step(0, formation, opposing, np.zeros(1), v, 1.0, ScriptedRng([0.5, 0.5], [1]))
        assert speed == pytest.approx(1.6)
        assert point[0] == pytest.approx(4.0)

    def test_missile_zero_acceleration(self):
        formation = _formation([[0.0]])
        opposing = _formation([[1.0]])
        _, speed = missile_attack_step(0, formation, opposing, np.zeros(1), VelocityTriple(0.5, 2.0, 0.0), 1.0, ScriptedRng())
        assert speed == 2.0

    def test_missile_on_target(self):
        formation = _formation([[1.0]])
        opposing = _formation([[1.0]])
        point, _ = missile_attack_step(0, formation, opposing, np.zeros(1), VelocityTriple(0.5, 2.0, 1.25), 1.0, ScriptedRng())
        assert point[0] == 1.0

    def test_missile_hand_example(self):
        formation = _formation([[0.0]])
        opposing = _formation([[1.0]])
        point, _ = missile_attack_step(0, formation, opposing, np.zeros(1), VelocityTriple(0.56, 2.0, 1.2), 1.0, ScriptedRng())
        assert point[0] == pytest.approx(1.4)


class TestEvasive:
    params = DosParams()

    def test_double_fallback(self):
        formation = _formation([[3.0]])
        point, _ = maneuver_evasion_step(
            0, formation, Archive(5, 1), self.params, np.zeros(1), VelocityTriple(1.0, 2.0, 0.8), 1.0, ScriptedRng()
        )
        assert point[0] == 3.0

    def test_single_entry_centroid(self):
        formation = _formation([[1.0]])
        archive = Archive(5, 1)
        archive.push(np.array([6.0]), 0.0, 1.0)
        point, _ = maneuver_evasion_step(
            0, formation, archive, self.params, np.zeros(1), VelocityTriple(1.0, 1.0, 0.0), 1.0, ScriptedRng([0.0])
        )
        assert point[0] == pytest.approx(6.0)

    def test_two_entry_centroid(self):
        formation = _formation([[1.0]])
        archive = Archive(5, 1)
        archive.push(np.array([0.0]), 0.0, 1.0)
        archive.push(np.array([4.0]), 0.0, 1.0)
        # round(5 * 0.4) = 2 most recent entries
        point, _ = maneuver_evasion_step(
            0, formation, archive, self.params, np.zeros(1), VelocityTriple(1.0, 1.0, 0.0), 1.0, ScriptedRng([0.4])
        )
        assert point[0] == pytest.approx(2.0)

    def test_flare_boundary_cases(self):
        bounds = Bounds(lower=(-2.0,) * 4, upper=(3.0,) * 4)
        x_rand = np.array([0.5, 0.5, 0.5, 0.5])
        i1 = np.array([1, 1, 0, 0])
        i2 = np.array([0, 1, 1, 0])
        np.testing.assert_allclose(flare_boundary_point(x_rand, i1, i2, bounds), [0.5, -1.5, -2.0, 3.0])

    def test_flare_step_heads_for_boundary_at_full_speed(self):
        bounds = Bounds(lower=(-2.0, -2.0), upper=(3.0, 3.0))
        formation = _formation([[0.0, 0.0]])
        # x_rand = (0.5, 0.5), I1 = (1, 0), I2 = (0, 1): target (0.5, -2)
        rng = ScriptedRng([0.5, 0.5, 0.9, 0.1, 0.1, 0.9])
        point, speed = flare_evasion_step(0, formation, bounds, np.zeros(2), VelocityTriple(1.0, 2.0, 0.8), 1.0, rng)
        assert speed == 2.0
        np.testing.assert_allclose(point, [1.0, -4.0])


class TestSelection:
    params = DosParams()

    def test_free_flight_probability(self):
        assert free_flight_probability(0.0, 1000.0, self.params) == pytest.approx(0.0821, abs=1e-4)

    def test_stealth_missile_branch(self):
        assert select_strategy_stealth_leader(1, 1000, 0.5, self.params, ScriptedRng([0.99, 0.0, 0.9])) == 3

    def test_stealth_flare_branch(self):
        assert select_strategy_stealth_leader(1, 1000, 0.5, self.params, ScriptedRng([0.99, 0.9, 0.9])) == 5

    def test_regular_forced_free_flight(self):
        rng = ScriptedRng()
        assert select_strategy_regular_leader(1, 1000, 0.5, self.params, rng) == Strategy.FREE_FLIGHT
        assert rng.calls == 0

    def test_regular_falls_through(self):
        assert select_strategy_regular_leader(100, 1000, 0.5, self.params, ScriptedRng([0.99, 0.0, 0.9])) == 3

    def test_time_gate(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            strategy = select_strategy_regular_leader(500, 1000, 0.5, self.params, rng)
            assert strategy in (2, 3, 4, 5)

    def test_wing_rules(self):
        assert select_strategy_wing(1, 0.5, ScriptedRng([0.0])) == 1
        assert select_strategy_wing(2, 0.5, ScriptedRng([0.9])) == 4
        assert select_strategy_wing(5, 0.5, ScriptedRng([0.7])) == 3

    def test_wing_consistency(self):
        rng = np.random.default_rng(4)
        for leader in range(1, 6):
            for _ in range(200):
                assert wing_strategy_allowed(leader, select_strategy_wing(leader, rng.random(), rng))

    def test_probability_unchanged_without_samples(self):
        assert update_prob_coefficient(0.5, [], [], [], [], 10, 100) == 0.5

    def test_probability_moves_toward_offense(self):
        updated = update_prob_coefficient(0.5, [1, 2], [3], [1, 2], [], 10, 100)
        assert updated == pytest.approx(0.5 + 0.05 * 0.5 * 1.0 * 0.1)

    def test_probability_ceiling(self):
        assert update_prob_coefficient(0.95, [1, 2], [3], [1, 2], [], 90, 100) == 0.95


class TestArchive:
    def test_ring_buffer(self):
        archive = Archive(3, 1)
        for value in range(5):
            archive.push(np.array([float(value)]), 0.0, 1.0)
        assert archive.size == 3
        np.testing.assert_array_equal(archive.entries().ravel(), [2.0, 3.0, 4.0])
        np.testing.assert_array_equal(archive.recent(2).ravel(), [3.0, 4.0])


def _check_invariants(optimizer: DosOptimizer, iterations: int) -> None:
    params = optimizer.params
    half = params.formation_size
    low = max(1, round_half_up(params.k1 * half))
    high = min(half - 1, round_half_up(0.5 * half))
    capacity = round_half_up(2.5 * params.swarm_size)
    lower = optimizer.problem.bounds.lower_array()
    upper = optimizer.problem.bounds.upper_array()
    gate = max(params.k3, params.k4)

    state = optimizer.initialize()
    for _ in range(iterations):
        if optimizer.evaluator.exhausted:
            break
        state = optimizer.step()
        assignment = state.last_assignment
        p = assignment.leader_count
        assert low <= p <= high
        for strategies, leaders in (
            (assignment.strategies_x, assignment.leaders_x),
            (assignment.strategies_y, assignment.leaders_y),
        ):
            assert set(np.unique(strategies)) <= {1, 2, 3, 4, 5}
            for i in range(p, len(strategies)):
                assert leaders[i] < p
                assert wing_strategy_allowed(strategies[leaders[i]], strategies[i])
            if assignment.iteration >= gate * state.max_iterations:
                assert not np.any(strategies[:p] == Strategy.FREE_FLIGHT)
        assert state.archive.size <= capacity
        v = state.triple
        assert settings.DOS_VELOCITY_FLOOR <= v.v_min <= v.v_max <= settings.DOS_VELOCITY_CEILING
        assert v.accel == pytest.approx((v.v_max - v.v_min) / 1.2)
        positions = state.positions()
        assert np.all(positions >= lower) and np.all(positions <= upper)
        for formation in (state.formation_x, state.formation_y):
            assert 0.05 <= formation.prob <= 0.95
            assert np.all(np.diff(formation.fitness) >= 0.0)


def test_invariants_short_run():
    problem = make_function("rastrigin", 10)
    params = DosParams()
    optimizer = DosOptimizer(problem, params, Budget(max_evaluations=params.swarm_size * 301), seed=9)
    _check_invariants(optimizer, 300)


def test_invariants_unconditional_replacement():
    problem = make_function("rastrigin", 10)
    params = DosParams(greedy_replacement=False)
    optimizer = DosOptimizer(problem, params, Budget(max_evaluations=params.swarm_size * 101), seed=9)
    _check_invariants(optimizer, 100)


def test_sphere_converges_quickly():
    record = dos_optimize(make_function("sphere", 5), budget=Budget(max_evaluations=50_000), seed=11)
    assert record.best_value <= 1e-3


@pytest.mark.slow
def test_invariants_long_run():
    problem = make_function("sphere", 10)
    params = DosParams()
    optimizer = DosOptimizer(problem, params, Budget(max_evaluations=params.swarm_size * 10_001), seed=17)
    _check_invariants(optimizer, 10_000)


class TestRun:
    def test_iterate_without_evaluator(self, sphere_problem):
        optimizer = DosOptimizer(sphere_problem, DosParams(swarm_size=10), Budget(max_evaluations=100), seed=6)
        state = optimizer.initialize()
        spent = optimizer.evaluator.count
        state = dos_iterate(state, sphere_problem, optimizer.rng)
        assert state.t == 1
        assert state.last_assignment.iteration == 1
        assert optimizer.evaluator.count == spent
        assert np.all(np.diff(state.formation_x.fitness) >= 0.0)

    def test_flat_landscape(self, flat_problem):
        optimizer = DosOptimizer(flat_problem, DosParams(swarm_size=10), Budget(max_evaluations=200), seed=1)
        optimizer.initialize()
        before = optimizer.state.positions().copy()
        record = optimizer.run()
        assert not np.array_equal(before, optimizer.state.positions())
        assert {v for _, v in record.curve} == {3.0}

    def test_greedy_replacement_never_worsens(self, sphere_problem):
        optimizer = DosOptimizer(sphere_problem, DosParams(swarm_size=10), Budget(max_evaluations=400), seed=5)
        state = optimizer.initialize()
        for _ in range(20):
            before = [state.formation_x.fitness.copy(), state.formation_y.fitness.copy()]
            state = optimizer.step()
            after = [state.formation_x.fitness, state.formation_y.fitness]
            for old, new in zip(before, after):
                assert np.all(new <= old)

    def test_one_dimensional_parabola(self):
        problem = Problem("parabola", Bounds(lower=(-5.0,), upper=(5.0,)), lambda x: float(x[0] ** 2))
        record = dos_optimize(problem, budget=Budget(max_evaluations=5000), seed=3)
        assert record.best_value <= 1e-6
        assert record.evaluations == 5000

    def test_budget_equal_to_swarm(self, sphere_problem):
        record = dos_optimize(sphere_problem, DosParams(swarm_size=10), Budget(max_evaluations=10), seed=2)
        assert record.evaluations == 10
        assert record.curve == [(10, record.best_value)]

    def test_budget_below_swarm(self, sphere_problem):
        with pytest.raises(BudgetError):
            DosOptimizer(sphere_problem, DosParams(swarm_size=10), Budget(max_evaluations=9))

    def test_truncated_final_iteration(self, sphere_problem):
        record = dos_optimize(sphere_problem, DosParams(swarm_size=10), Budget(max_evaluations=25), seed=2)
        assert record.evaluations == 25
        assert record.truncated

    def test_determinism(self, sphere_problem):
        first = dos_optimize(sphere_problem, budget=Budget(max_evaluations=2000), seed=77)
        second = dos_optimize(sphere_problem, budget=Budget(max_evaluations=2000), seed=77)
        assert first.curve == second.curve
        assert first.best_point == second.best_point

    def test_history_feeds_diversity(self, sphere_problem):
        optimizer = DosOptimizer(sphere_problem, DosParams(swarm_size=10), Budget(max_evaluations=100), seed=4, record_history=True)
        record = optimizer.run()
        assert len(optimizer.position_history()) == optimizer.state.t + 1
        assert len(record.diversity) == len(optimizer.position_history())
