"""UAV path planning over mountainous terrain.

A genome holds one (dx, dy, dz) triple per node. Nodes are decoded onto the
integer terrain grid, smoothed with natural cubic splines and scored by path
length plus altitude spread, with a flat penalty per violated constraint
family.
"""

import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline, RegularGridInterpolator

from dogfight.config import settings
from dogfight.core.errors import UnknownNameError
from dogfight.core.primitives import round_half_up, seeded_rng
from dogfight.core.problem import Problem
from dogfight.models.path import NoFlyZone, PathConfig, PathViolations
from dogfight.models.problem import Bounds, Evaluation

logger = logging.getLogger(__name__)

ZONE_PRESETS = {
    "table45": (
        (56.7157, 18.5965, 5.0676, 6.4409),
        (32.6590, 39.5000, 4.7530, 8.2620),
        (13.1987, 45.5621, 10.5505, 3.8032),
        (65.9033, 70.4151, 4.9743, 8.5927),
        (64.0290, 44.1858, 8.7564, 9.5035),
    ),
}
ZONE_PRESETS["five-zones"] = ZONE_PRESETS["table45"]


class Terrain:
    """Height grid indexed as grid[row=y, col=x], with bilinear queries in world units."""

    def __init__(self, grid, cell_size: float = 1.0):
        grid = np.array(grid, dtype=float, copy=True)
        if grid.ndim != 2 or min(grid.shape) < 2:
            raise ValueError(f"terrain grid must be 2-D with at least 2x2 cells, got shape {grid.shape}")
        if not np.all(np.isfinite(grid)):
            raise ValueError("terrain heights must be finite")
        if cell_size <= 0:
            raise ValueError(f"cell size must be positive, got {cell_size}")
        self.grid = grid
        self.grid.setflags(write=False)
        self.cell_size = float(cell_size)
        rows, cols = grid.shape
        self._ys = np.arange(rows) * self.cell_size
        self._xs = np.arange(cols) * self.cell_size
        self._interpolator = RegularGridInterpolator((self._ys, self._xs), grid, method="linear")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.grid.shape

    @property
    def extent(self) -> Tuple[float, float]:
        return float(self._xs[-1]), float(self._ys[-1])

    def height_at(self, x, y) -> np.ndarray:
        """Bilinear height; coordinates outside the grid are clamped to its edge."""
        xq = np.clip(np.asarray(x, dtype=float), 0.0, self._xs[-1])
        yq = np.clip(np.asarray(y, dtype=float), 0.0, self._ys[-1])
        return self._interpolator(np.stack([yq, xq], axis=-1))

    def cell_height(self, x: int, y: int) -> float:
        """Stored height of the cell nearest to integer world coordinates, clamped to the grid."""
        rows, cols = self.grid.shape
        col = min(max(int(round(x / self.cell_size)), 0), cols - 1)
        row = min(max(int(round(y / self.cell_size)), 0), rows - 1)
        return float(self.grid[row, col])


def generate_terrain(
    seed: int = settings.TERRAIN_SEED,
    grid_size: int = settings.PATH_GRID_SIZE,
    hill_count: int = settings.TERRAIN_HILLS,
    amplitude_range: Tuple[float, float] = settings.TERRAIN_AMPLITUDE,
    sigma_range: Tuple[float, float] = settings.TERRAIN_SIGMA,
    base_height: float = settings.TERRAIN_BASE_HEIGHT,
    cell_size: float = settings.PATH_CELL_SIZE,
) -> Terrain:
    """
    Seeded sum of Gaussian hills over a flat base.

    Args:
        seed: Terrain seed
        grid_size: Cells per side, at least 16
        hill_count: Number of hills
        amplitude_range: Hill peak height range
        sigma_range: Hill width range in world units
        base_height: Height of the flat base
        cell_size: World units per cell

    Returns:
        Terrain of grid_size x grid_size cells
    """
    if grid_size < 16:
        raise ValueError(f"grid_size must be at least 16, got {grid_size}")
    rng = seeded_rng(seed)
    coords = np.arange(grid_size) * cell_size
    xx, yy = np.meshgrid(coords, coords)
    grid = np.full((grid_size, grid_size), float(base_height))
    span = coords[-1]
    for _ in range(hill_count):
        cx, cy = rng.random(2) * span
        amplitude = rng.uniform(*amplitude_range)
        sigma = rng.uniform(*sigma_range)
        grid += amplitude * np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / (2.0 * sigma**2))
    logger.debug(f"Generated terrain seed={seed} with {hill_count} hills, peak {grid.max():.3f}")
    return Terrain(grid, cell_size)


def default_terrain() -> Terrain:
    return generate_terrain()


def save_terrain(terrain: Terrain, path: Union[str, Path]) -> None:
    """Write the plain-text grid: a 'H W cell' header, then H rows of W heights."""
    rows, cols = terrain.shape
    with open(path, "w") as handle:
        handle.write(f"{rows} {cols} {terrain.cell_size!r}\n")
        np.savetxt(handle, terrain.grid, fmt="%.17g")


def load_terrain(path: Union[str, Path]) -> Terrain:
    with open(path) as handle:
        header = handle.readline().split()
        if len(header) != 3:
            raise ValueError(f"terrain header must be 'H W cell', got {' '.join(header)!r}")
        rows, cols, cell = int(header[0]), int(header[1]), float(header[2])
        grid = np.loadtxt(handle, ndmin=2)
    if grid.shape != (rows, cols):
        raise ValueError(f"terrain body has shape {grid.shape}, header says ({rows}, {cols})")
    return Terrain(grid, cell)


def zone_preset(name: str) -> List[NoFlyZone]:
    if name not in ZONE_PRESETS:
        raise UnknownNameError("zone preset", name, ZONE_PRESETS)
    return [NoFlyZone(x_c=x, y_c=y, radius=r, height=h) for x, y, r, h in ZONE_PRESETS[name]]


def decode_nodes(genome, terrain: Terrain, config: PathConfig) -> np.ndarray:
    """
    Integer node positions from cumulative steps, lifted above the terrain.

    Args:
        genome: Interleaved (dx, dy, dz) per node
        terrain: Height grid
        config: Start point and node count

    Returns:
        node_count x 3 array of (x, y, z)
    """
    steps = np.asarray(genome, dtype=float).reshape(config.node_count, 3)
    xs = config.start[0] + np.cumsum(steps[:, 0])
    ys = config.start[1] + np.cumsum(steps[:, 1])
    nodes = np.empty((config.node_count, 3))
    for i in range(config.node_count):
        x = round_half_up(0.5 + xs[i])
        y = round_half_up(0.5 + ys[i])
        nodes[i] = (x, y, terrain.cell_height(x, y) + steps[i, 2])
    return nodes


def spline_interpolate(nodes, m: int) -> np.ndarray:
    """Natural cubic splines in x, y and z against the knot index, sampled at m points."""
    nodes = np.asarray(nodes, dtype=float)
    if m < 8:
        raise ValueError(f"at least 8 trajectory points are required, got {m}")
    knots = np.arange(nodes.shape[0], dtype=float)
    spline = CubicSpline(knots, nodes, axis=0, bc_type="natural")
    trajectory = spline(np.linspace(0.0, knots[-1], m))
    trajectory[0] = nodes[0]
    trajectory[-1] = nodes[-1]
    return trajectory


def path_objectives(trajectory) -> Tuple[float, float]:
    """Total length and the population standard deviation of altitude."""
    trajectory = np.asarray(trajectory, dtype=float)
    length = float(np.sum(np.linalg.norm(np.diff(trajectory, axis=0), axis=1)))
    spread = float(np.std(trajectory[:, 2]))
    return length, spread


def turn_angles(trajectory) -> np.ndarray:
    """Heading change at each interior point; zero where a segment has no length."""
    segments = np.diff(np.asarray(trajectory, dtype=float), axis=0)
    incoming, outgoing = segments[:-1], segments[1:]
    norms = np.linalg.norm(incoming, axis=1) * np.linalg.norm(outgoing, axis=1)
    dots = np.sum(incoming * outgoing, axis=1)
    cosines = np.divide(dots, norms, out=np.ones_like(dots), where=norms > 0.0)
    return np.arccos(np.clip(cosines, -1.0, 1.0))


def check_constraints(
    trajectory,
    terrain: Terrain,
    config: PathConfig,
    zones: Sequence[NoFlyZone] = (),
) -> PathViolations:
    trajectory = np.asarray(trajectory, dtype=float)
    x, y, z = trajectory[:, 0], trajectory[:, 1], trajectory[:, 2]

    no_fly = False
    for zone in zones:
        inside = (np.hypot(x - zone.x_c, y - zone.y_c) <= zone.radius) & (z <= zone.height)
        if np.any(inside):
            no_fly = True
            break

    destination = False
    if config.destination is not None:
        gap = math.hypot(x[-1] - config.destination[0], y[-1] - config.destination[1])
        destination = gap > config.destination_tolerance

    return PathViolations(
        turn=bool(np.any(turn_angles(trajectory) > config.turn_limit)),
        clearance=bool(np.any(z < terrain.height_at(x, y) + config.min_clearance)),
        boundary=bool(
            np.any((x < config.domain_lower) | (x > config.domain_upper))
            or np.any((y < config.domain_lower) | (y > config.domain_upper))
        ),
        altitude=bool(np.any(z > config.max_altitude)),
        no_fly=no_fly,
        destination=destination,
    )


def penalized_path_objective(
    genome,
    terrain: Terrain,
    config: PathConfig,
    zones: Sequence[NoFlyZone] = (),
) -> float:
    """Length plus altitude spread plus the flat penalty once per violated family."""
    trajectory = spline_interpolate(decode_nodes(genome, terrain, config), config.samples)
    length, spread = path_objectives(trajectory)
    violations = check_constraints(trajectory, terrain, config, zones)
    return length + spread + config.penalty * violations.count


class PathPlanningProblem(Problem):
    """The planner as a box-bounded problem over the step genome."""

    def __init__(
        self,
        terrain: Optional[Terrain] = None,
        config: Optional[PathConfig] = None,
        zones: Sequence[NoFlyZone] = (),
        name: str = "pathplan",
    ):
        self.terrain = terrain or default_terrain()
        self.config = config or PathConfig()
        self.zones = list(zones)
        step_lo, step_hi = self.config.step_bounds
        lift_lo, lift_hi = self.config.lift_bounds
        lower = [step_lo, step_lo, lift_lo] * self.config.node_count
        upper = [step_hi, step_hi, lift_hi] * self.config.node_count
        families = 4 + (1 if self.zones else 0) + (1 if self.config.destination is not None else 0)
        super().__init__(name, Bounds.from_arrays(lower, upper), self._length_and_spread, inequality_count=families)

    def trajectory(self, genome) -> np.ndarray:
        return spline_interpolate(decode_nodes(genome, self.terrain, self.config), self.config.samples)

    def _length_and_spread(self, genome) -> float:
        return sum(path_objectives(self.trajectory(genome)))

    def violations(self, genome) -> PathViolations:
        return check_constraints(self.trajectory(genome), self.terrain, self.config, self.zones)

    def evaluate(self, genome) -> Evaluation:
        trajectory = self.trajectory(genome)
        flags = check_constraints(trajectory, self.terrain, self.config, self.zones)
        families = [flags.turn, flags.clearance, flags.boundary, flags.altitude]
        if self.zones:
            families.append(flags.no_fly)
        if self.config.destination is not None:
            families.append(flags.destination)
        return Evaluation(f=sum(path_objectives(trajectory)), g=[1.0 if v else 0.0 for v in families])

    def fitness(self, genome) -> float:
        return penalized_path_objective(genome, self.terrain, self.config, self.zones)

    def is_feasible(self, genome) -> bool:
        return self.violations(genome).feasible
