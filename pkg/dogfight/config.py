"""Application configuration."""

from typing import List, Tuple
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Toolkit settings, overridable from the environment or a .env file."""

    APP_NAME: str = "DogfightSearch"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Dogfight Search defaults
    DOS_SWARM_SIZE: int = 50
    DOS_K1: float = 0.3
    DOS_K2: float = -2.5
    DOS_K3: float = 0.2
    DOS_K4: float = 0.05
    DOS_K5: float = 0.5
    DOS_INITIAL_VELOCITY: float = 1.0
    DOS_INITIAL_PROBABILITY: float = 0.5
    DOS_VELOCITY_FLOOR: float = 1e-4
    DOS_VELOCITY_CEILING: float = 10.0
    DOS_PROBABILITY_FLOOR: float = 0.05
    DOS_PROBABILITY_CEILING: float = 0.95
    DOS_GREEDY_REPLACEMENT: bool = True

    # Particle swarm baseline
    PSO_SWARM_SIZE: int = 40
    PSO_INERTIA: float = 0.7298
    PSO_COGNITIVE: float = 1.49618
    PSO_SOCIAL: float = 1.49618
    PSO_VELOCITY_CLAMP: float = 0.2

    # Constraint handling
    PENALTY_OFFSET: float = 1e4
    PENALTY_WEIGHT: float = 1e4
    EQUALITY_TOLERANCE: float = 1e-4

    # Path planning
    PATH_GRID_SIZE: int = 101
    PATH_CELL_SIZE: float = 1.0
    PATH_START: Tuple[float, float] = (5.0, 5.0)
    PATH_TURN_LIMIT_DEG: float = 60.0
    PATH_MIN_CLEARANCE: float = 0.5
    PATH_MAX_ALTITUDE: float = 20.0
    PATH_DOMAIN: Tuple[float, float] = (0.0, 100.0)
    PATH_SAMPLES: int = 100
    PATH_PENALTY: float = 10000.0
    PATH_STEP_BOUNDS: Tuple[float, float] = (-5.0, 25.0)
    PATH_LIFT_BOUNDS: Tuple[float, float] = (0.5, 5.0)
    PATH_DESTINATION_TOLERANCE: float = 2.0
    TERRAIN_SEED: int = 20250
    TERRAIN_HILLS: int = 6
    TERRAIN_AMPLITUDE: Tuple[float, float] = (2.0, 8.0)
    TERRAIN_SIGMA: Tuple[float, float] = (6.0, 14.0)
    TERRAIN_BASE_HEIGHT: float = 0.0

    # Wind farm power model
    WIND_SECTOR_WEIGHTS: List[float] = [
        0.06, 0.05, 0.05, 0.06, 0.07, 0.08, 0.11, 0.14, 0.13, 0.10, 0.08, 0.07,
    ]
    WIND_WEIBULL_SCALE: float = 13.0
    WIND_WEIBULL_SHAPE: float = 2.0
    WIND_RATED_POWER: float = 1500.0
    WIND_CUT_IN: float = 3.5
    WIND_RATED_SPEED: float = 14.0
    WIND_CUT_OUT: float = 25.0
    WIND_SPEED_BINS: int = 21
    WIND_CURVE_ALPHA: float = 5.402
    WIND_CURVE_BETA: float = 1.0 / 1500.0
    WIND_ROTOR_RADIUS: float = 40.0
    WIND_THRUST_COEFFICIENT: float = 0.8
    WIND_WAKE_DECAY: float = 0.075

    # Experiment runner
    WORKERS: int = 1
    OUTPUT_DIR: str = "results"
    CSV_SIGNIFICANT_DIGITS: int = 17
    SIGNIFICANCE_LEVEL: float = 0.05

    # Run ledger
    RECORD_RUNS: bool = False
    RESULTS_DB_URL: str = "sqlite:///dogfight_runs.db"

    # Timing harness
    TIMING_KERNEL_REPETITIONS: int = 1_000_000
    TIMING_EVALUATIONS: int = 200_000
    TIMING_DOS_REPETITIONS: int = 5
    TIMING_FUNCTION: str = "sphere"
    TIMING_DIMENSION: int = 10

    DEFAULT_ROOT_SEED: int = 20251018
    DEFAULT_RUNS: int = 25

    class Config:
        env_file = ".env"


settings = Settings()
