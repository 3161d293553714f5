"""Budget schedule, clamping, randomness and evaluation accounting."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from dogfight.core import (
    DimensionMismatchError,
    Evaluator,
    Problem,
    budget_for_dimension,
    clamp_to_bounds,
    derive_run_seed,
    round_half_up,
    seeded_rng,
)
from dogfight.models.problem import Bounds, Budget, RunRecord


@pytest.mark.parametrize(
    "d, expected",
    [(1, 50_000), (7, 50_000), (10, 50_000), (11, 100_000), (22, 100_000), (30, 100_000),
     (50, 200_000), (150, 400_000), (151, 500_000), (200, 500_000)],
)
def test_budget_schedule(d, expected):
    assert budget_for_dimension(d).max_evaluations == expected


def test_budget_schedule_is_monotone():
    values = [budget_for_dimension(d).max_evaluations for d in range(1, 300)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_budget_rejects_non_positive_dimension():
    with pytest.raises(ValueError):
        budget_for_dimension(0)


class TestClamp:
    box = Bounds(lower=(0.0, 0.0), upper=(10.0, 10.0))

    def test_one_sided(self):
        assert clamp_to_bounds([5, -3], self.box).tolist() == [5.0, 0.0]

    def test_identity_inside(self):
        inner = Bounds(lower=(0.0, 0.0), upper=(2.0, 2.0))
        assert clamp_to_bounds([1, 1], inner).tolist() == [1.0, 1.0]

    def test_both_clamped(self):
        assert clamp_to_bounds([11, 12], self.box).tolist() == [10.0, 10.0]

    def test_idempotent(self):
        rng = seeded_rng(3)
        points = rng.uniform(-20, 20, size=(50, 2))
        once = clamp_to_bounds(points, self.box)
        np.testing.assert_array_equal(clamp_to_bounds(once, self.box), once)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            clamp_to_bounds([1, 2, 3], self.box)


def test_bounds_validation():
    with pytest.raises(ValidationError):
        Bounds(lower=(1.0,), upper=(1.0,))
    with pytest.raises(ValidationError):
        Bounds(lower=(0.0, 0.0), upper=(1.0,))


def test_round_half_up():
    assert round_half_up(12.5) == 13
    assert round_half_up(7.5) == 8
    assert round_half_up(2.4999) == 2


class TestSeededRng:
    def test_same_seed_same_stream(self):
        np.testing.assert_array_equal(seeded_rng(42).random(1000), seeded_rng(42).random(1000))

    def test_different_seeds_differ(self):
        assert not np.array_equal(seeded_rng(1).random(10), seeded_rng(2).random(10))

    def test_uniform_mean(self):
        assert 0.49 <= seeded_rng(7).random(100_000).mean() <= 0.51

    def test_derived_seeds_are_stable_and_distinct(self):
        seeds = [derive_run_seed(20251018, i) for i in range(20)]
        assert seeds == [derive_run_seed(20251018, i) for i in range(20)]
        assert len(set(seeds)) == 20
        assert all(0 <= s < 2**64 for s in seeds)


class TestEvaluator:
    def test_counts_and_curve(self, sphere_problem):
        evaluator = Evaluator(sphere_problem, Budget(max_evaluations=10), population_size=5)
        evaluator.evaluate_many(np.full((5, 3), 2.0))
        evaluator.evaluate_many(np.full((5, 3), 1.0))
        assert evaluator.count == 10
        assert evaluator.exhausted
        assert evaluator.curve == [(5, 12.0), (10, 3.0)]

    def test_truncation_leaves_rows_infinite(self, sphere_problem):
        evaluator = Evaluator(sphere_problem, Budget(max_evaluations=3), population_size=5)
        values = evaluator.evaluate_many(np.zeros((5, 3)))
        assert evaluator.count == 3
        assert evaluator.truncated
        assert np.all(np.isinf(values[3:]))

    def test_record_is_non_increasing(self, sphere_problem):
        rng = seeded_rng(5)
        evaluator = Evaluator(sphere_problem, Budget(max_evaluations=40), population_size=4)
        while not evaluator.exhausted:
            evaluator.evaluate_many(rng.uniform(-5, 5, size=(4, 3)))
        record = evaluator.finish(5, "test", 0.0)
        values = [v for _, v in record.curve]
        assert values == sorted(values, reverse=True)
        assert record.curve[-1][0] <= 40
        assert record.feasible

    def test_non_finite_objective_becomes_inf(self):
        problem = Problem("nan", Bounds.uniform(0.0, 1.0, 2), lambda x: math.nan)
        evaluator = Evaluator(problem, Budget(max_evaluations=2))
        assert evaluator.evaluate([0.5, 0.5]) == math.inf


def test_run_record_rejects_increasing_curve():
    with pytest.raises(ValidationError):
        RunRecord(seed=1, curve=[(1, 1.0), (2, 2.0)])
