"""Analytic geometric phases for the spin pair, scalar trigonometry only.

These are regression oracles for the numeric pipeline and deliberately
share none of its code.
"""

import math
from dataclasses import dataclass
from typing import Tuple

from .model import Regime

TWO_PI = 2.0 * math.pi


def _wrap(x: float) -> float:
    r = math.fmod(x, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    # + 0.0 turns -0.0 into 0.0
    return 0.0 if r >= TWO_PI else r + 0.0


@dataclass(frozen=True)
class ClosedFormInput:
    regime: Regime
    angles: Tuple[float, ...]
    sign_of_j: int = 1


def fourfold_gp(theta1: float, theta2: float, theta3: float) -> float:
    """Unreduced four-fold geometric phase."""
    c1, s1 = math.cos(theta1), math.sin(theta1)
    c2, s2 = math.cos(theta2), math.sin(theta2)
    return math.pi * (1.0 - 3.0 * c1 * c1
                      + s1 * s1 * (3.0 * c2 * c2 - math.cos(2.0 * theta3) * s2 * s2))


def gp_closed_form(inp: ClosedFormInput) -> float:
    """Geometric phase in ``[0, 2 pi)`` for a pure initial state.

    The same formulas hold for either sign of J.
    """
    if inp.sign_of_j not in (1, -1):
        raise ValueError(f"sign_of_j must be +1 or -1, got {inp.sign_of_j!r}")
    angles = tuple(inp.angles)
    if inp.regime is Regime.FOURFOLD_CRITICAL:
        if len(angles) != 3:
            raise ValueError(f"four-fold closed form takes 3 angles, got {len(angles)}")
        return _wrap(fourfold_gp(*angles))
    if len(angles) != 1:
        raise ValueError(f"two-fold closed form takes 1 angle, got {len(angles)}")
    (theta,) = angles
    if inp.regime is Regime.ALIGNED_PAIR:
        return _wrap(TWO_PI * math.cos(theta) ** 2)
    return _wrap(TWO_PI * math.sin(theta) ** 2)


def mixed_gp_closed_form(regime: Regime) -> float:
    """Zero in every regime for mixtures diagonal in the ground basis."""
    return 0.0
