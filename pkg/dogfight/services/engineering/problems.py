"""Formulations R1 to R8 of the engineering suite.

Each ``*_raw`` function maps a snapped point to ``(f, g, h)`` with
inequalities feasible when ``g <= 0``. Builders wrap them in a
:class:`ConstrainedProblem` with the published bounds and discrete sets.
"""

import math
from typing import Optional, Tuple

import numpy as np

from dogfight.models.engineering import DiscreteSpec
from dogfight.models.params import PenaltyConfig
from dogfight.models.problem import Bounds

from .base import ConstrainedProblem

RawResult = Tuple[float, list, list]


def alkylation_raw(x: np.ndarray) -> RawResult:
    """Optimal operation of an alkylation unit; profit maximization written as minimization."""
    x1, x2, x3, x4, x5, x6, x7 = x
    f = -(0.035 * x1 * x6 + 1.715 * x1 + 10.0 * x2 + 4.0565 * x3 - 0.063 * x3 * x5)
    g = [
        0.0059553571 * x6**2 * x1 + 0.88392857 * x3 - 0.1175625 * x6 * x1 - x1,
        1.1088 * x1 + 0.1303533 * x1 * x6 - 0.0066033 * x1 * x6**2 - x3,
        6.66173269 * x6**2 - 56.596669 * x4 + 172.39878 * x5 - 191.20592 * x6 - 10000.0,
        1.08702 * x6 - 0.03762 * x6**2 + 0.32175 * x4 + 56.85075 - x5,
        0.006198 * x7 * x4 * x3 + 2462.3121 * x2 - 25.125634 * x2 * x4 - x3 * x4,
        161.18996 * x3 * x4 + 5000.0 * x2 * x4 - 489510.0 * x2 - x3 * x4 * x7,
        0.33 * x7 + 44.333333 - x5,
        0.022556 * x5 - 1.0 - 0.007595 * x7,
        0.00061 * x3 - 1.0 - 0.0005 * x1,
        0.819672 * x1 - x3 + 0.819672,
        24500.0 * x2 - 250.0 * x2 * x4 - x3 * x4,
        1020.4082 * x4 * x2 + 1.2244898 * x3 * x4 - 100000.0 * x2,
        6.25 * x1 * x6 + 6.25 * x1 - 7.625 * x3 - 100000.0,
        1.22 * x3 - x6 * x1 - x1 + 1.0,
    ]
    return f, g, []


def process_flow_sheeting_raw(x: np.ndarray) -> RawResult:
    x1, x2, x3 = x
    f = -0.7 * x3 + 0.8 + 5.0 * (0.5 - x1) ** 2
    g = [
        -math.exp(x1 - 0.2) - x2,
        x2 + 1.1 * x3 + 1.0,
        x1 - x3 - 0.2,
    ]
    return f, g, []


def welded_beam_raw(x: np.ndarray) -> RawResult:
    """Welded beam cost with shear, bending, deflection and buckling limits."""
    x1, x2, x3, x4 = x
    load, length = 6000.0, 14.0
    f = 1.1047 * x1**2 * x2 + 0.04811 * x3 * x4 * (length + x2)

    tau_p = load / (math.sqrt(2.0) * x1 * x2)
    radius = math.sqrt(x2**2 / 4.0 + ((x1 + x3) / 2.0) ** 2)
    moment = load * (length + x2 / 2.0)
    polar = 2.0 * math.sqrt(2.0) * x1 * x2 * (x2**2 / 4.0 + ((x1 + x3) / 2.0) ** 2)
    tau_pp = moment * radius / polar
    tau = math.sqrt(tau_p**2 + tau_p * tau_pp * x2 / radius + tau_pp**2)
    sigma = 504000.0 / (x3**2 * x4)
    delta = 65856000.0 / (30e6 * x4 * x3**3)
    buckling = 102372.4 * (1.0 - 0.0282346 * x3) * x3 * x4**3

    g = [
        tau - 13600.0,
        sigma - 30000.0,
        delta - 0.25,
        x1 - x4,
        load - buckling,
        0.125 - x1,
        1.1047 * x1 + 0.04811 * x3 * x4 * (length + x2) - 5.0,
    ]
    return f, g, []


def pressure_vessel_raw(x: np.ndarray) -> RawResult:
    """Pressure vessel cost; x1 and x2 are plate thicknesses in multiples of 1/16 inch."""
    x1, x2, x3, x4 = x
    z1 = 0.0625 * x1
    z2 = 0.0625 * x2
    f = 1.7781 * z2 * x3**2 + 0.6224 * z1 * x3 * x4 + 3.1661 * z1**2 * x4 + 19.84 * z1**2 * x3
    g = [
        0.00954 * x3 - z2,
        0.0193 * x3 - z1,
        x4 - 240.0,
        -math.pi * x3**2 * x4 - (4.0 / 3.0) * math.pi * x3**3 + 1296000.0,
    ]
    return f, g, []


def side_impact_raw(x: np.ndarray) -> RawResult:
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = x
    f = 1.98 + 4.9 * x1 + 6.67 * x2 + 6.98 * x3 + 4.01 * x4 + 1.78 * x5 + 2.73 * x7
    g = [
        1.16 - 0.3717 * x2 * x4 - 0.00931 * x2 * x10 - 0.484 * x3 * x9 + 0.01343 * x6 * x10 - 1.0,
        46.36 - 9.9 * x2 - 12.9 * x1 * x2 + 0.1107 * x3 * x10 - 32.0,
        33.86 + 2.95 * x3 + 0.1792 * x3 - 5.057 * x1 * x2 - 11.0 * x2 * x8 - 0.0215 * x5 * x10
        - 9.98 * x7 * x8 + 22.0 * x8 * x9 - 32.0,
        28.98 + 3.818 * x3 - 4.2 * x1 * x2 + 0.0207 * x5 * x10 + 6.63 * x6 * x9 - 7.7 * x7 * x8
        + 0.32 * x9 * x10 - 32.0,
        0.261 - 0.0159 * x1 * x2 - 0.188 * x1 * x8 - 0.019 * x2 * x7 + 0.0144 * x3 * x5
        + 0.0008757 * x5 * x10 + 0.08045 * x6 * x9 + 0.00139 * x8 * x11 + 0.00001575 * x10 * x11 - 0.32,
        0.214 + 0.00817 * x5 - 0.131 * x1 * x8 - 0.0704 * x1 * x9 + 0.03099 * x2 * x6 - 0.018 * x2 * x7
        + 0.0208 * x3 * x8 + 0.121 * x3 * x9 - 0.00364 * x5 * x6 + 0.0007715 * x5 * x10
        - 0.0005354 * x6 * x10 + 0.00121 * x8 * x11 + 0.00184 * x9 * x10 - 0.02 * x2**2 - 0.32,
        0.74 - 0.61 * x2 - 0.163 * x3 * x8 + 0.001232 * x3 * x10 - 0.166 * x7 * x9 + 0.227 * x2**2 - 0.32,
        4.72 - 0.5 * x4 - 0.19 * x2 * x3 - 0.0122 * x4 * x10 + 0.009325 * x6 * x10 + 0.000191 * x11**2 - 4.0,
        10.58 - 0.674 * x1 * x2 - 1.95 * x2 * x8 + 0.02054 * x3 * x10 - 0.0198 * x4 * x10
        + 0.028 * x6 * x10 - 9.9,
        16.45 - 0.489 * x3 * x7 - 0.843 * x5 * x6 + 0.0432 * x9 * x10 - 0.0556 * x9 * x11
        - 0.000786 * x11**2 - 15.7,
    ]
    return f, g, []


def refrigeration_raw(x: np.ndarray) -> RawResult:
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14 = x
    f = (
        63098.88 * x2 * x4 * x12
        + 5441.5 * x2**2 * x12
        + 115055.5 * x2**1.664 * x6
        + 6172.27 * x2**2 * x6
        + 63098.88 * x1 * x3 * x11
        + 5441.5 * x1**2 * x11
        + 115055.5 * x1**1.664 * x5
        + 6172.27 * x1**2 * x5
        + 140.53 * x1 * x11
        + 281.29 * x3 * x11
        + 70.26 * x1**2
        + 281.29 * x1 * x3
        + 281.29 * x3**2
        + 14437.0 * x8**1.8812 * x12**0.3424 * x10 / x14 * x1**2 * x7 / x9
        + 20470.2 * x7**2.893 * x11**0.316 * x1**2
    )
    g = [
        1.524 / x7 - 1.0,
        1.524 / x8 - 1.0,
        0.07789 * x1 - 2.0 * x9 / x7 - 1.0,
        7.05305 * x1**2 * x10 / (x9 * x8 * x2 * x14) - 1.0,
        0.0833 * x14 / x13 - 1.0,
        47.136 * x2**0.333 * x12 / x10
        - 1.333 * x8 * x13**2.1195
        + 62.08 * x13**2.1195 * x8**0.2 / (x12 * x10)
        - 1.0,
        0.04771 * x10 * x8**1.8812 * x12**0.3424 - 1.0,
        0.0488 * x9 * x7**1.893 * x11**0.316 - 1.0,
        0.0099 * x1 / x3 - 1.0,
        0.0193 * x2 / x4 - 1.0,
        0.0298 * x1 / x5 - 1.0,
        0.056 * x2 / x6 - 1.0,
        2.0 / x9 - 1.0,
        2.0 / x10 - 1.0,
        x12 / x11 - 1.0,
    ]
    return f, g, []


# step-cone pulley constants, SI units
PULLEY_SPEEDS = (750.0, 450.0, 250.0, 150.0)
PULLEY_INPUT_SPEED = 350.0
PULLEY_DENSITY = 7200.0
PULLEY_CENTER_DISTANCE = 3.0
PULLEY_FRICTION = 0.35
PULLEY_STRESS = 1.75e6
PULLEY_THICKNESS = 8e-3
PULLEY_MIN_POWER = 0.75 * 745.6998


def step_cone_pulley_raw(x: np.ndarray) -> RawResult:
    """Pulley weight; diameters and width are given in millimetres."""
    scaled = np.asarray(x, dtype=float) * 1e-3
    diameters, width = scaled[:4], scaled[4]
    a = PULLEY_CENTER_DISTANCE
    mu = PULLEY_FRICTION

    weight = 0.0
    belt_lengths = []
    tension_ratios = []
    powers = []
    for d, speed in zip(diameters, PULLEY_SPEEDS):
        ratio = speed / PULLEY_INPUT_SPEED
        weight += d**2 * (1.0 + ratio**2)
        belt_lengths.append(math.pi * d / 2.0 * (1.0 + ratio) + (ratio - 1.0) ** 2 * d**2 / (4.0 * a) + 2.0 * a)
        wrap = math.pi - 2.0 * math.asin((ratio - 1.0) * d / (2.0 * a))
        tension_ratios.append(math.exp(mu * wrap))
        powers.append(
            PULLEY_STRESS * PULLEY_THICKNESS * width * (1.0 - math.exp(-mu * wrap)) * math.pi * d * speed / 60.0
        )
    f = PULLEY_DENSITY * width * math.pi / 4.0 * weight

    g = [2.0 - r for r in tension_ratios] + [PULLEY_MIN_POWER - p for p in powers]
    h = [belt_lengths[0] - other for other in belt_lengths[1:]]
    return f, g, h


# hydrostatic thrust bearing constants
BEARING_GAMMA = 0.0307
BEARING_SPECIFIC_HEAT = 0.5
BEARING_VISCOSITY_SLOPE = -3.55
BEARING_VISCOSITY_INTERCEPT = 10.04
BEARING_WEIGHT = 101000.0
BEARING_MAX_PRESSURE = 1000.0
BEARING_MAX_TEMPERATURE_RISE = 50.0
BEARING_MIN_FILM = 0.001
BEARING_GRAVITY = 386.4
BEARING_SPEED = 750.0


def thrust_bearing_raw(x: np.ndarray) -> RawResult:
    """Power loss of a hydrostatic thrust bearing; variables are (R, R0, mu, Q)."""
    radius, recess, viscosity, flow = x
    exponent = (
        math.log10(math.log10(8.122e6 * viscosity + 0.8)) - BEARING_VISCOSITY_INTERCEPT
    ) / BEARING_VISCOSITY_SLOPE
    temperature_rise = 2.0 * (10.0**exponent - 560.0)
    friction_loss = 9336.0 * flow * BEARING_GAMMA * BEARING_SPECIFIC_HEAT * temperature_rise
    film = (
        (2.0 * math.pi * BEARING_SPEED / 60.0) ** 2
        * 2.0 * math.pi * viscosity / friction_loss
        * (radius**4 / 4.0 - recess**4 / 4.0)
        - 1e-5
    )
    log_ratio = math.log(radius / recess)
    inlet_pressure = 6.0 * viscosity * flow / (math.pi * film**3) * log_ratio
    load = math.pi * inlet_pressure / 2.0 * (radius**2 - recess**2) / log_ratio - 1e-5

    f = (flow * inlet_pressure / 0.7 + friction_loss) / 12.0
    g = [
        inlet_pressure - BEARING_MAX_PRESSURE,
        BEARING_WEIGHT - load,
        load / (math.pi * (radius**2 - recess**2)) - 5000.0,
        temperature_rise - BEARING_MAX_TEMPERATURE_RISE,
        BEARING_GAMMA / (BEARING_GRAVITY * inlet_pressure) * (flow / (2.0 * math.pi * radius * film)) - 0.001,
        recess - radius,
        BEARING_MIN_FILM - film,
    ]
    return f, g, []


def _bounds(lower, upper) -> Bounds:
    return Bounds.from_arrays(lower, upper)


def alkylation(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = _bounds(
        [1000.0, 0.0, 2000.0, 0.0, 0.0, 0.0, 0.0],
        [2000.0, 100.0, 4000.0, 100.0, 100.0, 20.0, 200.0],
    )
    return ConstrainedProblem("alkylation", "R1", bounds, alkylation_raw, 14, penalty=penalty, epsilon=epsilon)


def process_flow_sheeting(
    penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None
) -> ConstrainedProblem:
    bounds = _bounds([0.2, -2.22554, 0.0], [1.0, -1.0, 1.0])
    return ConstrainedProblem(
        "process_flow_sheeting",
        "R2",
        bounds,
        process_flow_sheeting_raw,
        3,
        discrete={2: DiscreteSpec(values=(0.0, 1.0))},
        penalty=penalty,
        epsilon=epsilon,
    )


def welded_beam(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = _bounds([0.1, 0.1, 0.1, 0.1], [2.0, 10.0, 10.0, 2.0])
    return ConstrainedProblem("welded_beam", "R3", bounds, welded_beam_raw, 7, penalty=penalty, epsilon=epsilon)


def pressure_vessel(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = _bounds([1.0, 1.0, 10.0, 10.0], [99.0, 99.0, 200.0, 200.0])
    integer = DiscreteSpec(integer=True)
    return ConstrainedProblem(
        "pressure_vessel",
        "R4",
        bounds,
        pressure_vessel_raw,
        4,
        discrete={0: integer, 1: integer},
        penalty=penalty,
        epsilon=epsilon,
    )


def side_impact(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = _bounds([0.5] * 7 + [0.192, 0.192, -30.0, -30.0], [1.5] * 7 + [0.345, 0.345, 30.0, 30.0])
    material = DiscreteSpec(values=(0.192, 0.345))
    return ConstrainedProblem(
        "side_impact",
        "R5",
        bounds,
        side_impact_raw,
        10,
        discrete={7: material, 8: material},
        penalty=penalty,
        epsilon=epsilon,
    )


def refrigeration(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = Bounds.uniform(0.001, 5.0, 14)
    return ConstrainedProblem("refrigeration", "R6", bounds, refrigeration_raw, 15, penalty=penalty, epsilon=epsilon)


def step_cone_pulley(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = _bounds([0.0] * 5, [60.0, 60.0, 90.0, 90.0, 90.0])
    return ConstrainedProblem(
        "step_cone_pulley", "R7", bounds, step_cone_pulley_raw, 8, 3, penalty=penalty, epsilon=epsilon
    )


def thrust_bearing(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    bounds = _bounds([1.0, 1.0, 1e-6, 1.0], [16.0, 16.0, 16e-6, 16.0])
    return ConstrainedProblem("thrust_bearing", "R8", bounds, thrust_bearing_raw, 7, penalty=penalty, epsilon=epsilon)
