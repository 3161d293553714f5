"""Run ledger on a throwaway SQLite database."""

import math

import pytest

from dogfight.database import get_session_factory
from dogfight.models.problem import RunRecord
from dogfight.services.recorder import load_runs, record_battery, summary_from_ledger


@pytest.fixture
def factory(tmp_path):
    return get_session_factory(f"sqlite:///{tmp_path / 'ledger.db'}")


def _records(values, algorithm):
    return [
        RunRecord(
            seed=2**63 + i,
            algorithm=algorithm,
            best_value=v,
            feasible=math.isfinite(v),
            best_point=[0.5 * i, 1.0],
            evaluations=100,
            elapsed=0.01,
        )
        for i, v in enumerate(values)
    ]


def test_round_trip(factory):
    results = {"DoS": _records([1.0, 2.0, 3.0], "DoS"), "PSO": _records([5.0, math.inf], "PSO")}
    battery_id = record_battery("demo", "R4", 20251018, 3, results, session_factory=factory)
    stored = load_runs(battery_id, factory)
    assert [r.best_value for r in stored["DoS"]] == [1.0, 2.0, 3.0]
    assert stored["PSO"][1].best_value == math.inf
    assert not stored["PSO"][1].feasible
    assert stored["DoS"][2].seed == 2**63 + 2
    assert stored["DoS"][1].best_point == [0.5, 1.0]
    assert {r.problem for r in stored["DoS"]} == {"R4"}


def test_summary_from_ledger(factory):
    battery_id = record_battery("demo", "R3", 1, 3, {"DoS": _records([1.0, 2.0, 3.0], "DoS")}, session_factory=factory)
    summary = summary_from_ledger(battery_id, factory)
    assert summary["DoS"].mean == 2.0
    assert summary["DoS"].success == 1.0


def test_batteries_are_separate(factory):
    first = record_battery("a", "R1", 1, 1, {"DoS": _records([1.0], "DoS")}, session_factory=factory)
    second = record_battery("b", "R2", 1, 1, {"DoS": _records([9.0], "DoS")}, session_factory=factory)
    assert first != second
    assert load_runs(second, factory)["DoS"][0].best_value == 9.0


def test_unknown_battery(factory):
    record_battery("a", "R1", 1, 1, {"DoS": _records([1.0], "DoS")}, session_factory=factory)
    with pytest.raises(KeyError):
        load_runs(999, factory)
