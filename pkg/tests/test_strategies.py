"""Displacement rules of the four strategies."""

import math

import numpy as np
import pytest

from cvteleport.fidelity import ComplexAmplitude, one_shot_fidelity
from cvteleport.protocol import squeeze_from_lambda
from cvteleport.strategies import (
    CircleTailored,
    Standard,
    circle_displacement,
    line_displacement,
    optimal_displacement,
    standard_displacement,
)


class TestOptimalDisplacement:
    def test_no_squeezing_uses_guess(self):
        guess = ComplexAmplitude(1.5, -2.0)
        eps = optimal_displacement(guess, ComplexAmplitude(9.0, 9.0), squeeze_from_lambda(0.0))
        assert eps == guess

    def test_large_squeezing_uses_outcome(self):
        beta = ComplexAmplitude(0.5, 0.25)
        eps = optimal_displacement(
            ComplexAmplitude(1.0, 0.0), beta, squeeze_from_lambda(1.0 - 1e-9)
        )
        assert eps.x == pytest.approx(beta.x, abs=1e-8)
        assert eps.y == pytest.approx(beta.y, abs=1e-8)

    def test_arithmetic(self):
        eps = optimal_displacement(
            ComplexAmplitude(1.0, 0.0), ComplexAmplitude(0.5, 0.0), squeeze_from_lambda(0.5)
        )
        assert (eps.x, eps.y) == (0.75, 0.0)


class TestLineDisplacement:
    def test_arithmetic(self):
        eps = line_displacement(ComplexAmplitude(3.0, 4.0), squeeze_from_lambda(0.5))
        assert (eps.x, eps.y) == (4.0, 2.0)

    def test_pure_guess_limit(self):
        beta = ComplexAmplitude(-1.0, 2.0)
        eps = line_displacement(beta, squeeze_from_lambda(0.0))
        assert (eps.x, eps.y) == (abs(beta), 0.0)

    def test_outcome_on_line(self):
        eps = line_displacement(ComplexAmplitude(2.0, 0.0), squeeze_from_lambda(0.3))
        assert (eps.x, eps.y) == (2.0, 0.0)


class TestCircleDisplacement:
    def test_projects_onto_circle(self):
        eps = circle_displacement(ComplexAmplitude(0.0, 5.0), 2.0, squeeze_from_lambda(0.0))
        assert eps.x == pytest.approx(0.0, abs=1e-15)
        assert eps.y == pytest.approx(2.0, abs=1e-15)

    def test_large_squeezing_limit(self):
        r = 3.0
        beta = ComplexAmplitude(r * math.cos(1.1), r * math.sin(1.1))
        eps = circle_displacement(beta, r, squeeze_from_lambda(1.0 - 1e-9))
        assert eps.x == pytest.approx(beta.x, abs=1e-8)
        assert eps.y == pytest.approx(beta.y, abs=1e-8)

    def test_outcome_on_circle(self):
        # |beta| equal to the radius makes the displacement exactly beta
        eps = circle_displacement(ComplexAmplitude(3.0, 4.0), 5.0, squeeze_from_lambda(0.5))
        assert eps.x == pytest.approx(3.0, abs=1e-12)
        assert eps.y == pytest.approx(4.0, abs=1e-12)

    def test_origin_outcome_flagged(self):
        with pytest.warns(RuntimeWarning):
            eps = circle_displacement(
                ComplexAmplitude(0.0, 0.0), 2.0, squeeze_from_lambda(0.4)
            )
        # arg(0) resolved as 0: the guess sits on the positive real axis
        assert (eps.x, eps.y) == ((1.0 - 0.4) * 2.0, 0.0)

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            circle_displacement(ComplexAmplitude(1.0, 0.0), -1.0, squeeze_from_lambda(0.0))
        with pytest.raises(ValueError):
            CircleTailored(radius=-2.0)


class TestStandardDisplacement:
    @pytest.mark.parametrize(
        "g, beta, expected",
        [
            (1.0, (1.0, 1.0), (1.0, 1.0)),
            (0.0, (3.0, -2.0), (0.0, 0.0)),
            (0.5, (2.0, -2.0), (1.0, -1.0)),
        ],
    )
    def test_scaling(self, g, beta, expected):
        eps = standard_displacement(ComplexAmplitude(*beta), g)
        assert (eps.x, eps.y) == expected

    def test_negative_gain(self):
        with pytest.raises(ValueError):
            standard_displacement(ComplexAmplitude(1.0, 0.0), -0.5)
        with pytest.raises(ValueError):
            Standard(gain=-1.0)


class TestProperties:
    def test_interpolation(self):
        # every tailored displacement is the (1-lam, lam) convex mix of its
        # guess and the outcome
        rng = np.random.default_rng(21)
        for _ in range(500):
            lam = rng.uniform(0.0, 0.999)
            sq = squeeze_from_lambda(lam)
            beta = ComplexAmplitude(rng.uniform(-5, 5), rng.uniform(-5, 5))
            guess = ComplexAmplitude(rng.uniform(-5, 5), rng.uniform(-5, 5))
            eps = optimal_displacement(guess, beta, sq)
            assert eps.x == pytest.approx((1 - lam) * guess.x + lam * beta.x, abs=1e-12)
            assert eps.y == pytest.approx((1 - lam) * guess.y + lam * beta.y, abs=1e-12)

            eps = line_displacement(beta, sq)
            assert eps.x == pytest.approx((1 - lam) * abs(beta) + lam * beta.x, abs=1e-12)
            assert eps.y == pytest.approx(lam * beta.y, abs=1e-12)

            r = rng.uniform(0.0, 5.0)
            eps = circle_displacement(beta, r, sq)
            phi = beta.arg()
            assert eps.x == pytest.approx(
                (1 - lam) * r * math.cos(phi) + lam * beta.x, abs=1e-12
            )
            assert eps.y == pytest.approx(
                (1 - lam) * r * math.sin(phi) + lam * beta.y, abs=1e-12
            )

    def test_line_circle_agree_on_positive_axis(self):
        for lam in (0.0, 0.4, 0.97):
            sq = squeeze_from_lambda(lam)
            for x in (0.5, 2.0, 7.5):
                beta = ComplexAmplitude(x, 0.0)
                line = line_displacement(beta, sq)
                circ = circle_displacement(beta, abs(beta), sq)
                assert (circ.x, circ.y) == (line.x, line.y)

    def test_optimal_displacement_is_argmax(self):
        rng = np.random.default_rng(22)
        for _ in range(10):
            lam = rng.uniform(0.0, 0.999)
            sq = squeeze_from_lambda(lam)
            alpha = ComplexAmplitude(rng.uniform(-3, 3), rng.uniform(-3, 3))
            beta = ComplexAmplitude(rng.uniform(-3, 3), rng.uniform(-3, 3))
            eps = optimal_displacement(alpha, beta, sq)
            best = one_shot_fidelity(alpha, beta, eps, sq).value
            for dx in (-0.5, -0.01, 0.01, 0.5):
                for dy in (-0.5, -0.01, 0.01, 0.5):
                    shifted = ComplexAmplitude(eps.x + dx, eps.y + dy)
                    assert one_shot_fidelity(alpha, beta, shifted, sq).value < best
