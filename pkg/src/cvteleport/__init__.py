"""Numerical laboratory for tailored continuous-variable teleportation.

Implements the Heisenberg-picture variance algebra of a teleporter whose
measurement and displacement are tailored to prior knowledge of the
target alphabet, the one-shot and averaged fidelity formulas, a seeded
Monte Carlo engine over measurement outcomes that cross-validates the
closed forms, Gaussian-alphabet averaging, and the derivative-free
optimisation used to tune the protocol parameters.
"""

from .alphabet import (
    AlphabetDistribution,
    Circle,
    Gaussian2D,
    LineUniform,
    gaussian_weighted_fidelity,
    gaussian_weighted_fidelity_quadrature,
    sample_target,
)
from .fidelity import (
    ComplexAmplitude,
    Fidelity,
    avg_fidelity_general_gain,
    avg_fidelity_unit_gain,
    bfk_classical_limit,
    one_shot_fidelity,
)
from .measurement import (
    McEstimate,
    OutcomeModel,
    mc_average_fidelity,
    mc_average_fidelity_line_segment,
    quadrature_average_fidelity,
    sample_measurement,
)
from .optimize import (
    NonFiniteObjectiveError,
    OptimizationResult,
    maximize_scalar,
    optimize_eta_g2,
    optimize_gain,
)
from .protocol import (
    LAMBDA_MAX,
    ProtocolSettings,
    QuadratureCoefficients,
    QuadratureVariances,
    SqueezeLevel,
    g1_of_eta,
    g2_optimal,
    output_coefficients_tailored,
    squeeze_from_G,
    squeeze_from_lambda,
    variance_standard_gain,
    variances_tailored,
)
from .strategies import (
    CircleTailored,
    LineTailored,
    OptimalKnownTarget,
    Standard,
    Strategy,
    circle_displacement,
    line_displacement,
    optimal_displacement,
    standard_displacement,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetDistribution",
    "Circle",
    "CircleTailored",
    "ComplexAmplitude",
    "Fidelity",
    "Gaussian2D",
    "LAMBDA_MAX",
    "LineTailored",
    "LineUniform",
    "McEstimate",
    "NonFiniteObjectiveError",
    "OptimalKnownTarget",
    "OptimizationResult",
    "OutcomeModel",
    "ProtocolSettings",
    "QuadratureCoefficients",
    "QuadratureVariances",
    "SqueezeLevel",
    "Standard",
    "Strategy",
    "avg_fidelity_general_gain",
    "avg_fidelity_unit_gain",
    "bfk_classical_limit",
    "circle_displacement",
    "gaussian_weighted_fidelity",
    "gaussian_weighted_fidelity_quadrature",
    "g1_of_eta",
    "g2_optimal",
    "line_displacement",
    "maximize_scalar",
    "mc_average_fidelity",
    "mc_average_fidelity_line_segment",
    "one_shot_fidelity",
    "optimal_displacement",
    "optimize_eta_g2",
    "optimize_gain",
    "output_coefficients_tailored",
    "quadrature_average_fidelity",
    "sample_measurement",
    "sample_target",
    "squeeze_from_G",
    "squeeze_from_lambda",
    "standard_displacement",
    "variance_standard_gain",
    "variances_tailored",
]
