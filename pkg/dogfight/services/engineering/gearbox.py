"""Four-stage gearbox weight minimization (R9).

22 variables in the order (Np1, Ng1, ..., Np4, Ng4, b1..b4, xp1, xg1..xg4,
yp1, yg1..yg4). The pinion of stage i > 1 sits on the shaft of gear i - 1,
so its position is (xg(i-1), yg(i-1)).
"""

import math
from typing import Optional, Tuple

import numpy as np

from dogfight.models.engineering import DiscreteSpec
from dogfight.models.params import PenaltyConfig
from dogfight.models.problem import Bounds

from .base import ConstrainedProblem

TEETH_RANGE = (7, 76)
FACE_WIDTHS = (3.175, 5.715, 8.255, 12.7)
POSITIONS = tuple(round(12.7 * k, 1) for k in range(1, 10))

OVERLOAD = 1.5
MIN_DIAMETER = 25.0
BENDING_GEOMETRY = 0.2
PRESSURE_ANGLE = math.radians(20.0)
POWER = 55.9
MOUNTING = 1.6
MIN_CONTACT_RATIO = 1.4
MAX_LENGTH = 127.0
ELASTIC = 464.0
CONTACT_STRESS = 3290.0
MAX_OUTPUT_SPEED = 255.0
INPUT_SPEED = 5000.0
BENDING_STRESS = 2090.0
MIN_OUTPUT_SPEED = 245.0


def split_genome(x: np.ndarray) -> Tuple[np.ndarray, ...]:
    """Teeth, face widths and stage geometry: (Np, Ng, b, xp, yp, xg, yg)."""
    x = np.asarray(x, dtype=float)
    teeth = x[:8]
    pinion = teeth[0::2]
    gear = teeth[1::2]
    width = x[8:12]
    xs = x[12:17]
    ys = x[17:22]
    xp = np.concatenate(([xs[0]], xs[1:4]))
    yp = np.concatenate(([ys[0]], ys[1:4]))
    return pinion, gear, width, xp, yp, xs[1:], ys[1:]


def _width_family(total, center, width, roots, coefficient, sign):
    # zero unless the face width is the one value missing from roots
    factors = (width - roots[0]) * (width - roots[1]) * (width - roots[2])
    return sign * (total * factors - coefficient * center * factors)


def gearbox_raw(x: np.ndarray):
    """Weight and the 86 stress, geometry, width-selection and speed constraints."""
    pinion, gear, width, xp, yp, xg, yg = split_genome(x)
    total = pinion + gear
    center = np.sqrt((yg - yp) ** 2 + (xg - xp) ** 2)

    f = math.pi / 1000.0 * np.sum(width * center**2 * (pinion**2 + gear**2) / total**2)

    reduction = np.concatenate(([1.0], np.cumprod(gear[:3] / pinion[:3])))
    load = 366000.0 * reduction / (math.pi * INPUT_SPEED) + 2.0 * center * pinion / total
    bending_limit = BENDING_STRESS * BENDING_GEOMETRY / (0.0167 * POWER * OVERLOAD * MOUNTING)
    bending = load * total**2 / (4.0 * width * center**2 * pinion) - bending_limit
    sin_phi = math.sin(PRESSURE_ANGLE)
    cos_phi = math.cos(PRESSURE_ANGLE)
    contact_limit = (CONTACT_STRESS / ELASTIC) ** 2 * sin_phi * cos_phi / (0.0334 * POWER * OVERLOAD * MOUNTING)
    contact = load * total**3 / (4.0 * width * center**2 * gear * pinion**2) - contact_limit

    quarter = sin_phi**2 / 4.0
    contact_ratio = (
        -gear * np.sqrt(quarter + 1.0 / gear + (1.0 / gear) ** 2)
        - pinion * np.sqrt(quarter + 1.0 / pinion + (1.0 / pinion) ** 2)
        + total * sin_phi / 2.0
        + MIN_CONTACT_RATIO * math.pi * cos_phi
    )

    pinion_diameter = MIN_DIAMETER - 2.0 * center * pinion / total
    gear_diameter = MIN_DIAMETER - 2.0 * center * gear / total

    pinion_reach = (pinion + 2.0) * center / total
    gear_reach = (gear + 2.0) * center / total
    pinion_x_far = pinion_reach - MAX_LENGTH + xp
    pinion_x_near = pinion_reach - xp
    pinion_y_far = pinion_reach - MAX_LENGTH + yp
    pinion_y_near = pinion_reach - yp
    gear_x_far = gear_reach - MAX_LENGTH + xg
    gear_x_near = gear_reach - xg
    gear_y_far = gear_reach - MAX_LENGTH + yg
    gear_y_near = gear_reach - yg

    b = width
    families = [
        _width_family(total, center, b, (8.255, 5.715, 12.7), 0.945, 1.0),
        _width_family(total, center, b, (8.255, 3.175, 12.7), 0.646, -1.0),
        _width_family(total, center, b, (5.715, 3.175, 12.7), 0.504, -1.0),
        -total * (b - 5.715) * (b - 3.175) * (b - 8.255),
        _width_family(total, center, b, (8.255, 5.715, 12.7), 1.812, -1.0),
        _width_family(total, center, b, (8.255, 3.175, 12.7), 0.945, 1.0),
        _width_family(total, center, b, (5.715, 3.175, 12.7), 0.646, -1.0),
        _width_family(total, center, b, (5.715, 3.175, 8.255), 0.504, 1.0),
    ]

    ratio = INPUT_SPEED * np.prod(pinion) / np.prod(gear)
    g = np.concatenate(
        [
            bending,
            contact,
            contact_ratio,
            pinion_diameter,
            gear_diameter,
            pinion_x_far,
            pinion_x_near,
            pinion_y_far,
            pinion_y_near,
            gear_x_far,
            gear_x_near,
            gear_y_far,
            gear_y_near,
            *families,
            [MIN_OUTPUT_SPEED - ratio, ratio - MAX_OUTPUT_SPEED],
        ]
    )
    return float(f), g.tolist(), []


def gearbox(penalty: Optional[PenaltyConfig] = None, epsilon: Optional[float] = None) -> ConstrainedProblem:
    lower = [TEETH_RANGE[0]] * 8 + [FACE_WIDTHS[0]] * 4 + [POSITIONS[0]] * 10
    upper = [TEETH_RANGE[1]] * 8 + [FACE_WIDTHS[-1]] * 4 + [POSITIONS[-1]] * 10
    teeth = DiscreteSpec(integer=True)
    widths = DiscreteSpec(values=FACE_WIDTHS)
    positions = DiscreteSpec(values=POSITIONS)
    discrete = {i: teeth for i in range(8)}
    discrete.update({i: widths for i in range(8, 12)})
    discrete.update({i: positions for i in range(12, 22)})
    return ConstrainedProblem(
        "gearbox",
        "R9",
        Bounds.from_arrays(lower, upper),
        gearbox_raw,
        86,
        discrete=discrete,
        penalty=penalty,
        epsilon=epsilon,
    )
