"""Dogfight Search: dual formations, five kinematic strategies and dynamic selection."""

from .formation import EVASIVE, OFFENSIVE, Archive, Formation, PromisingSet, Strategy, VelocityTriple
from .kinematics import (
    flare_boundary_point,
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
from .optimizer import (
    Assignment,
    DosOptimizer,
    DosState,
    archive_capacity,
    dos_iterate,
    dos_optimize,
    initialize_formations,
    max_iterations,
)
from .selection import (
    select_strategy_regular_leader,
    select_strategy_stealth_leader,
    select_strategy_wing,
    update_prob_coefficient,
    wing_strategy_allowed,
)

__all__ = [
    "EVASIVE",
    "OFFENSIVE",
    "Archive",
    "Formation",
    "PromisingSet",
    "Strategy",
    "VelocityTriple",
    "flare_boundary_point",
    "flare_evasion_step",
    "flight_duration",
    "free_flight_step",
    "head_guidance",
    "leader_count",
    "maneuver_evasion_step",
    "maneuver_lockon_step",
    "missile_attack_step",
    "update_velocity_bounds",
    "Assignment",
    "DosOptimizer",
    "DosState",
    "archive_capacity",
    "dos_iterate",
    "dos_optimize",
    "initialize_formations",
    "max_iterations",
    "select_strategy_regular_leader",
    "select_strategy_stealth_leader",
    "select_strategy_wing",
    "update_prob_coefficient",
    "wing_strategy_allowed",
]
