"""Target-state alphabets and the alphabet-weighted average fidelity.

The alphabet-weighted figure of merit is the integral of the general-gain
average fidelity F(alpha) against the probability density of the verifier
preparing target alpha.  For a two-dimensional Gaussian alphabet both
sides are Gaussian in alpha, so the integral has the closed form
implemented in :func:`gaussian_weighted_fidelity`;
:func:`gaussian_weighted_fidelity_quadrature` evaluates the same integral
numerically and serves as the independent oracle (it also covers
asymmetric alphabets, which the closed form does not).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .fidelity import ComplexAmplitude
from .protocol import SqueezeLevel, variance_standard_gain


@dataclass(frozen=True)
class LineUniform:
    """Uniform on the real segment [0, alpha_max]."""

    alpha_max: float

    def __post_init__(self) -> None:
        if not (self.alpha_max > 0.0):
            raise ValueError(f"alpha_max must be positive, got {self.alpha_max}")


@dataclass(frozen=True)
class Circle:
    """Uniform phase at fixed amplitude ``radius``."""

    radius: float

    def __post_init__(self) -> None:
        if self.radius < 0.0:
            raise ValueError(f"radius must be non-negative, got {self.radius}")


@dataclass(frozen=True)
class Gaussian2D:
    """Centred two-dimensional Gaussian with axis standard deviations s_x, s_y.

    Density P(alpha) = exp(-alpha_x^2/(2 s_x^2) - alpha_y^2/(2 s_y^2))
    / (2 pi s_x s_y), normalised to 1.
    """

    s_x: float
    s_y: float

    def __post_init__(self) -> None:
        if not (self.s_x > 0.0 and self.s_y > 0.0):
            raise ValueError(
                f"standard deviations must be positive, got ({self.s_x}, {self.s_y})"
            )


AlphabetDistribution = Union[LineUniform, Circle, Gaussian2D]


def sample_target(
    dist: AlphabetDistribution, rng: np.random.Generator
) -> ComplexAmplitude:
    """Draw one target amplitude from the alphabet."""
    if isinstance(dist, LineUniform):
        return ComplexAmplitude(rng.uniform(0.0, dist.alpha_max), 0.0)
    if isinstance(dist, Circle):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        return ComplexAmplitude(dist.radius * math.cos(theta), dist.radius * math.sin(theta))
    if isinstance(dist, Gaussian2D):
        return ComplexAmplitude(rng.normal(0.0, dist.s_x), rng.normal(0.0, dist.s_y))
    raise TypeError(f"unknown alphabet: {dist!r}")


def gaussian_weighted_fidelity(sq: SqueezeLevel, g: float, s: float) -> float:
    """Closed-form alphabet-weighted fidelity for a symmetric Gaussian alphabet.

    With the 50:50 common-gain variances V+ = V- = V, the general-gain
    average fidelity is A exp(-c |alpha|^2) with A = 2/(V+1) and
    c = 2 (1-g)^2 / (V+1); integrating against the symmetric Gaussian of
    standard deviation s gives

        A / (1 + 2 c s^2),

    an exact Gaussian integral (see README for the two-line derivation).
    """
    if not (s > 0.0):
        raise ValueError(f"alphabet standard deviation must be positive, got {s}")
    v = variance_standard_gain(sq, g).v_plus
    a = 2.0 / (v + 1.0)
    c = 2.0 * (1.0 - g) ** 2 / (v + 1.0)
    return a / (1.0 + 2.0 * c * s * s)


def gaussian_weighted_fidelity_quadrature(
    sq: SqueezeLevel, g: float, s_x: float, s_y: float, order: int
) -> float:
    """Gauss-Hermite evaluation of the alphabet-weighted fidelity integral.

    Reference implementation for :func:`gaussian_weighted_fidelity`;
    also supports asymmetric alphabets (s_x != s_y).
    """
    if order < 16:
        raise ValueError(f"quadrature order must be at least 16, got {order}")
    if not (s_x > 0.0 and s_y > 0.0):
        raise ValueError(f"standard deviations must be positive, got ({s_x}, {s_y})")
    if g < 0.0:
        raise ValueError(f"gain must be non-negative, got {g}")
    v = variance_standard_gain(sq, g).v_plus
    a = 2.0 / (v + 1.0)
    c = 2.0 * (1.0 - g) ** 2 / (v + 1.0)
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    ax = math.sqrt(2.0) * s_x * nodes[:, None]
    ay = math.sqrt(2.0) * s_y * nodes[None, :]
    f = a * np.exp(-c * (ax * ax + ay * ay))
    return float((weights[:, None] * weights[None, :] * f).sum() / math.pi)
