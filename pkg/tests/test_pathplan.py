"""Path planning: decoding, spline smoothing, constraint families and terrain files."""

import numpy as np
import pytest

from dogfight.core.errors import UnknownNameError
from dogfight.models.path import NoFlyZone, PathConfig
from dogfight.services.pathplan import (
    PathPlanningProblem,
    Terrain,
    check_constraints,
    decode_nodes,
    generate_terrain,
    load_terrain,
    path_objectives,
    penalized_path_objective,
    save_terrain,
    spline_interpolate,
    turn_angles,
    zone_preset,
)

NODES = np.array(
    [[0.0, 0.0, 1.0], [10.0, 4.0, 3.0], [18.0, 15.0, 2.0], [30.0, 17.0, 6.0],
     [41.0, 30.0, 4.0], [47.0, 44.0, 5.0], [60.0, 50.0, 2.0]]
)


@pytest.fixture
def flat():
    return Terrain(np.zeros((101, 101)))


def _straight_genome(dz=2.0, nodes=7):
    return np.tile([10.0, 0.0, dz], nodes)


class TestSpline:
    @pytest.mark.parametrize("m", [13, 19, 61])
    def test_passes_through_knots(self, m):
        trajectory = spline_interpolate(NODES, m)
        stride = (m - 1) // (len(NODES) - 1)
        np.testing.assert_allclose(trajectory[::stride], NODES, atol=1e-9)

    def test_endpoints_exact(self):
        trajectory = spline_interpolate(NODES, 100)
        np.testing.assert_array_equal(trajectory[0], NODES[0])
        np.testing.assert_array_equal(trajectory[-1], NODES[-1])

    def test_linear_data_is_reproduced(self):
        nodes = np.column_stack([np.arange(7.0), 2.0 * np.arange(7.0), np.full(7, 3.0)])
        trajectory = spline_interpolate(nodes, 25)
        t = np.linspace(0.0, 6.0, 25)
        np.testing.assert_allclose(trajectory, np.column_stack([t, 2.0 * t, np.full(25, 3.0)]), atol=1e-12)

    def test_natural_ends(self):
        trajectory = spline_interpolate(NODES, 601)
        second = np.diff(trajectory, n=2, axis=0)
        scale = np.max(np.abs(second), axis=0)
        assert np.all(np.abs(second[0]) <= 0.1 * scale)
        assert np.all(np.abs(second[-1]) <= 0.1 * scale)

    def test_second_derivative_continuous_at_knots(self):
        # centred differences are exact on each cubic piece, so S'' is extrapolated to the knot from both sides
        per_piece = 100
        trajectory = spline_interpolate(NODES, per_piece * (len(NODES) - 1) + 1)
        h = 1.0 / per_piece
        second = (trajectory[2:] - 2.0 * trajectory[1:-1] + trajectory[:-2]) / h**2
        for knot in range(1, len(NODES) - 1):
            k = knot * per_piece
            left = 2.0 * second[k - 2] - second[k - 3]
            right = 2.0 * second[k] - second[k + 1]
            np.testing.assert_allclose(left, right, atol=1e-6)

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            spline_interpolate(NODES, 7)


class TestDecode:
    def test_cumulative_steps(self, flat):
        config = PathConfig()
        genome = np.tile([1.0, 2.0, 3.0], config.node_count)
        nodes = decode_nodes(genome, flat, config)
        # start (5, 5) plus cumulative steps, shifted half a cell and rounded
        np.testing.assert_array_equal(nodes[:, 0], [7, 8, 9, 10, 11, 12, 13])
        np.testing.assert_array_equal(nodes[:, 1], [8, 10, 12, 14, 16, 18, 20])
        np.testing.assert_array_equal(nodes[:, 2], np.full(7, 3.0))

    def test_lift_is_above_terrain(self):
        grid = np.fromfunction(lambda r, c: 0.1 * c, (101, 101))
        config = PathConfig()
        nodes = decode_nodes(_straight_genome(dz=1.5), Terrain(grid), config)
        np.testing.assert_allclose(nodes[:, 2], 0.1 * nodes[:, 0] + 1.5)

    def test_nodes_outside_grid_use_edge_heights(self, flat):
        config = PathConfig()
        nodes = decode_nodes(np.tile([30.0, 30.0, 1.0], config.node_count), flat, config)
        assert nodes[-1, 0] > 100
        assert nodes[-1, 2] == 1.0


class TestObjectives:
    def test_straight_path(self):
        trajectory = np.column_stack([np.arange(11.0), np.zeros(11), np.full(11, 2.0)])
        assert path_objectives(trajectory) == (10.0, 0.0)

    def test_altitude_spread_is_population_std(self):
        trajectory = np.column_stack([np.arange(4.0), np.zeros(4), [1.0, 3.0, 1.0, 3.0]])
        _, spread = path_objectives(trajectory)
        assert spread == pytest.approx(1.0)

    def test_turn_angles(self):
        trajectory = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
        np.testing.assert_allclose(turn_angles(trajectory), [np.pi / 2, 0.0])


class TestConstraints:
    config = PathConfig()

    @staticmethod
    def _line(z=2.0, x0=10.0, x1=60.0, y=20.0, n=20):
        return np.column_stack([np.linspace(x0, x1, n), np.full(n, y), np.full(n, z)])

    def test_feasible(self, flat):
        assert check_constraints(self._line(), flat, self.config).feasible

    def test_clearance(self, flat):
        assert check_constraints(self._line(z=0.2), flat, self.config).clearance

    def test_altitude(self, flat):
        flags = check_constraints(self._line(z=25.0), flat, self.config)
        assert flags.altitude and not flags.clearance

    def test_boundary(self, flat):
        assert check_constraints(self._line(x0=-3.0), flat, self.config).boundary

    def test_turn(self, flat):
        zigzag = np.array([[10.0, 10.0, 2.0], [20.0, 10.0, 2.0], [12.0, 12.0, 2.0], [20.0, 20.0, 2.0]])
        assert check_constraints(zigzag, flat, self.config).turn

    def test_no_fly_zone(self, flat):
        zone = NoFlyZone(x_c=35.0, y_c=20.0, radius=5.0, height=10.0)
        assert check_constraints(self._line(z=5.0), flat, self.config, [zone]).no_fly
        assert not check_constraints(self._line(z=11.0), flat, self.config, [zone]).no_fly

    def test_no_fly_edge_is_inside(self, flat):
        zone = NoFlyZone(x_c=30.0, y_c=25.0, radius=5.0, height=10.0)
        trajectory = np.array([[30.0, 20.0, 10.0], [31.0, 20.0, 10.0], [32.0, 20.0, 10.0]])
        assert check_constraints(trajectory, flat, self.config, [zone]).no_fly

    def test_destination(self, flat):
        config = PathConfig(destination=(60.0, 20.0))
        assert not check_constraints(self._line(), flat, config).destination
        assert check_constraints(self._line(x1=50.0), flat, config).destination

    def test_families_counted_once(self, flat):
        trajectory = self._line(z=30.0, x0=-5.0, x1=120.0)
        flags = check_constraints(trajectory, flat, self.config)
        assert flags.count == 2


class TestPenalizedObjective:
    def test_straight_feasible_path(self, flat):
        assert penalized_path_objective(_straight_genome(), flat, PathConfig()) == pytest.approx(60.0)

    def test_flat_penalty_per_family(self, flat):
        value = penalized_path_objective(_straight_genome(dz=21.0), flat, PathConfig())
        assert value == pytest.approx(60.0 + 10000.0)

    def test_problem_wrapper(self, flat):
        problem = PathPlanningProblem(terrain=flat)
        genome = _straight_genome()
        assert problem.dimension == 21
        assert problem.fitness(genome) == pytest.approx(60.0)
        assert problem.is_feasible(genome)
        evaluation = problem.evaluate(genome)
        assert evaluation.g == [0.0, 0.0, 0.0, 0.0]

    def test_zones_add_a_family(self, flat):
        problem = PathPlanningProblem(terrain=flat, zones=zone_preset("five-zones"))
        assert problem.inequality_count == 5


class TestZonesAndTerrain:
    def test_preset(self):
        zones = zone_preset("table45")
        assert len(zones) == 5
        assert zone_preset("five-zones") == zones
        assert all(z.radius > 0 and z.height > 0 for z in zones)
        with pytest.raises(UnknownNameError):
            zone_preset("table")

    def test_generation_is_seeded(self):
        a = generate_terrain(seed=3, grid_size=32)
        b = generate_terrain(seed=3, grid_size=32)
        c = generate_terrain(seed=4, grid_size=32)
        np.testing.assert_array_equal(a.grid, b.grid)
        assert not np.array_equal(a.grid, c.grid)
        assert a.shape == (32, 32)

    def test_small_grid_rejected(self):
        with pytest.raises(ValueError):
            generate_terrain(grid_size=8)

    def test_round_trip(self, tmp_path):
        terrain = generate_terrain(seed=11, grid_size=20)
        path = tmp_path / "terrain.txt"
        save_terrain(terrain, path)
        loaded = load_terrain(path)
        np.testing.assert_array_equal(loaded.grid, terrain.grid)
        assert loaded.cell_size == terrain.cell_size

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 3 1.0\n0 0 0\n0 0 0\n")
        with pytest.raises(ValueError):
            load_terrain(path)

    def test_heights_clamped_outside(self):
        terrain = Terrain(np.array([[0.0, 1.0], [2.0, 3.0]]))
        assert terrain.height_at(0.5, 0.5) == pytest.approx(1.5)
        assert terrain.height_at(-4.0, 9.0) == pytest.approx(2.0)
