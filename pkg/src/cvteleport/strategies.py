"""Receiver displacement rules for each protocol variant.

Every tailored rule is the convex combination

    epsilon = (1 - lam) * guess + lam * beta

of a best guess for the target and the measurement outcome beta; the
variants differ only in how the guess is formed from prior knowledge.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

from .fidelity import ComplexAmplitude
from .protocol import SqueezeLevel


@dataclass(frozen=True)
class Standard:
    """Plain scaled displacement epsilon = gain * beta."""

    gain: float = 1.0

    def __post_init__(self) -> None:
        if self.gain < 0.0:
            raise ValueError(f"gain must be non-negative, got {self.gain}")


@dataclass(frozen=True)
class OptimalKnownTarget:
    """Perfect prior knowledge: the guess is the true target amplitude."""


@dataclass(frozen=True)
class LineTailored:
    """Targets on the positive real axis: phase known, amplitude guessed as |beta|."""


@dataclass(frozen=True)
class CircleTailored:
    """Targets of known amplitude (the radius), phase guessed as arg(beta)."""

    radius: float

    def __post_init__(self) -> None:
        if self.radius < 0.0:
            raise ValueError(f"radius must be non-negative, got {self.radius}")


Strategy = Union[Standard, OptimalKnownTarget, LineTailored, CircleTailored]


def optimal_displacement(
    alpha_guess: ComplexAmplitude, beta: ComplexAmplitude, sq: SqueezeLevel
) -> ComplexAmplitude:
    """Fidelity-maximising displacement epsilon = (1-lam) alpha_guess + lam beta.

    With no squeezing it is best to displace straight to the guess; as
    squeezing grows the measurement outcome takes over and the rule tends
    to the standard unit-gain displacement.
    """
    lam = sq.lam
    return ComplexAmplitude(
        (1.0 - lam) * alpha_guess.x + lam * beta.x,
        (1.0 - lam) * alpha_guess.y + lam * beta.y,
    )


def line_displacement(beta: ComplexAmplitude, sq: SqueezeLevel) -> ComplexAmplitude:
    """Displacement for targets on the positive real axis.

    The guess is alpha_x = |beta|, alpha_y = 0, giving

        eps_x = (1 - lam) |beta| + lam beta_x,   eps_y = lam beta_y.
    """
    lam = sq.lam
    return ComplexAmplitude((1.0 - lam) * abs(beta) + lam * beta.x, lam * beta.y)


def circle_displacement(
    beta: ComplexAmplitude, radius: float, sq: SqueezeLevel
) -> ComplexAmplitude:
    """Displacement for targets of known amplitude ``radius``.

    The guess is the point on the circle at the measured angle:

        eps_x = (1 - lam) radius cos(arg beta) + lam beta_x
        eps_y = (1 - lam) radius sin(arg beta) + lam beta_y.

    arg(0) is undefined; the (measure-zero) outcome beta = 0 is resolved
    deterministically as arg = 0 and flagged with a RuntimeWarning.
    """
    if radius < 0.0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    if beta.x == 0.0 and beta.y == 0.0:
        warnings.warn(
            "measurement outcome at the phase-space origin: taking arg(0) = 0",
            RuntimeWarning,
            stacklevel=2,
        )
    lam = sq.lam
    phi = math.atan2(beta.y, beta.x)
    return ComplexAmplitude(
        (1.0 - lam) * radius * math.cos(phi) + lam * beta.x,
        (1.0 - lam) * radius * math.sin(phi) + lam * beta.y,
    )


def standard_displacement(beta: ComplexAmplitude, g: float) -> ComplexAmplitude:
    """Standard-protocol displacement epsilon = g * beta."""
    if g < 0.0:
        raise ValueError(f"gain must be non-negative, got {g}")
    return ComplexAmplitude(g * beta.x, g * beta.y)
