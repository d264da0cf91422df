"""Executable acceptance checks for the package's headline numbers.

Each criterion is a deterministic function returning a
:class:`CriterionResult`; the CLI ``check`` subcommand runs all of them
and exits nonzero if any fail, and the test suite asserts them one by
one.  All tolerances are pinned here, next to the checks, and every
Monte Carlo run uses a fixed seed so the outcome never flickers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .alphabet import gaussian_weighted_fidelity, gaussian_weighted_fidelity_quadrature
from .experiments import default_lambda_grid
from .fidelity import (
    ComplexAmplitude,
    avg_fidelity_unit_gain,
    bfk_classical_limit,
    one_shot_fidelity,
    transfer_exponent,
)
from .measurement import mc_average_fidelity
from .optimize import optimize_eta_g2, optimize_gain
from .protocol import (
    ProtocolSettings,
    g1_of_eta,
    g2_optimal,
    output_coefficients_tailored,
    squeeze_from_G,
    squeeze_from_lambda,
    standard_gain_coefficients,
    variance_standard_gain,
    variances_tailored,
)
from .strategies import CircleTailored, LineTailored, Standard, optimal_displacement

BASE_SEED = 987654321


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _result(number: int, name: str, passed: bool, detail: str) -> CriterionResult:
    return CriterionResult(number=number, name=name, passed=passed, detail=detail)


def format_line(res: CriterionResult) -> str:
    status = "PASS" if res.passed else "FAIL"
    return f"[{status}] criterion {res.number:2d} {res.name}: {res.detail}"


def _seed(k: int) -> int:
    return (BASE_SEED ^ (k * 0x9E3779B9)) % 2 ** 64


def criterion_standard_baseline() -> CriterionResult:
    """Analytic standard curve (1+lam)/2 and its Monte Carlo reproduction."""
    f0 = avg_fidelity_unit_gain(variance_standard_gain(squeeze_from_G(1.0), 1.0)).value
    if f0 != 0.5:
        return _result(1, "standard baseline", False, f"analytic F(0)={f0!r} != 0.5")
    alpha = ComplexAmplitude(5.0, 0.0)
    worst = 0.0
    for i, lam in enumerate((0.0, 0.25, 0.5, 0.75, 0.9)):
        est = mc_average_fidelity(
            Standard(1.0), alpha, squeeze_from_lambda(lam), 100_000, _seed(100 + i)
        )
        pull = abs(est.mean - (1.0 + lam) / 2.0) / est.std_error
        worst = max(worst, pull)
    return _result(
        1,
        "standard baseline",
        worst <= 3.0,
        f"analytic F(0)=0.5 exact; worst MC deviation {worst:.2f} std errors (limit 3)",
    )


def criterion_line_limit() -> CriterionResult:
    """Line-tailored MC at lam=0, amplitude 5: 1/sqrt(2) within 0.005."""
    est = mc_average_fidelity(
        LineTailored(), ComplexAmplitude(5.0, 0.0), squeeze_from_lambda(0.0),
        1_000_000, _seed(2),
    )
    err = abs(est.mean - 1.0 / math.sqrt(2.0))
    return _result(
        2,
        "displacement-only limit",
        err <= 0.005,
        f"MC mean {est.mean:.6f} vs 0.707107, |diff| {err:.2e} (limit 5e-3)",
    )


def criterion_full_tailoring_limit() -> CriterionResult:
    """No-squeezing optimum: eta*=0, g2*=0, F=sqrt(2/3), all within 1e-9."""
    res = optimize_eta_g2(squeeze_from_G(1.0))
    eta_star, g2_star = res.argmax
    target = math.sqrt(2.0 / 3.0)
    errs = (abs(eta_star), abs(g2_star), abs(res.value - target))
    return _result(
        3,
        "full tailoring limit",
        max(errs) <= 1e-9,
        f"eta*={eta_star:.2e}, g2*={g2_star:.2e}, |F-sqrt(2/3)|={errs[2]:.2e} (limit 1e-9)",
    )


def _fig3_curves() -> tuple[list[float], list[float], list[float], list[float], list[float]]:
    grid = default_lambda_grid()
    eta_stars, g2_stars, f_full, f_disp, f_std = [], [], [], [], []
    for lam in grid:
        sq = squeeze_from_lambda(lam)
        res = optimize_eta_g2(sq)
        eta_stars.append(res.argmax[0])
        g2_stars.append(res.argmax[1])
        f_full.append(res.value)
        half = math.pi / 4
        f_disp.append(
            avg_fidelity_unit_gain(variances_tailored(sq, half, g2_optimal(sq, half))).value
        )
        f_std.append((1.0 + lam) / 2.0)
    return eta_stars, g2_stars, f_full, f_disp, f_std


def criterion_fig3_asymptotes() -> CriterionResult:
    """eta*(lam) runs 0 -> pi/4 and g2*(lam) runs 0 -> 1/sqrt(2), both monotone."""
    eta_stars, g2_stars, _, _, _ = _fig3_curves()
    mono_eta = all(b >= a for a, b in zip(eta_stars, eta_stars[1:]))
    mono_g2 = all(b >= a for a, b in zip(g2_stars, g2_stars[1:]))
    start_ok = eta_stars[0] == 0.0 and g2_stars[0] == 0.0
    end_eta = abs(eta_stars[-1] - math.pi / 4)
    end_g2 = abs(g2_stars[-1] - 1.0 / math.sqrt(2.0))
    passed = mono_eta and mono_g2 and start_ok and end_eta <= 0.01 and end_g2 <= 0.01
    return _result(
        4,
        "tuned-parameter asymptotes",
        passed,
        f"monotone eta*:{mono_eta} g2*:{mono_g2}; start ({eta_stars[0]:.1e},{g2_stars[0]:.1e}); "
        f"end gaps eta*:{end_eta:.2e} g2*:{end_g2:.2e} (limit 0.01)",
    )


def criterion_curve_ordering() -> CriterionResult:
    """f_full >= f_disp_only >= f_standard everywhere, strict for lam <= 0.98."""
    grid = default_lambda_grid()
    _, _, f_full, f_disp, f_std = _fig3_curves()
    weak_ok = all(a >= b >= c for a, b, c in zip(f_full, f_disp, f_std))
    strict_ok = all(
        f_full[i] > f_disp[i] > f_std[i]
        for i in range(len(grid))
        if grid[i] <= 0.98
    )
    min_gap = min(
        f_full[i] - f_disp[i] for i in range(len(grid)) if grid[i] <= 0.98
    )
    return _result(
        5,
        "curve ordering",
        weak_ok and strict_ok,
        f"weak ordering everywhere: {weak_ok}; strict for lam<=0.98: {strict_ok} "
        f"(min full-vs-disp gap {min_gap:.2e})",
    )


def criterion_cross_picture() -> CriterionResult:
    """Outcome-sampling line curve equals the closed-form curve within 0.01."""
    grid = default_lambda_grid()
    alpha = ComplexAmplitude(5.0, 0.0)
    worst = 0.0
    for i, lam in enumerate(grid):
        sq = squeeze_from_lambda(lam)
        est = mc_average_fidelity(LineTailored(), alpha, sq, 100_000, _seed(600 + i))
        heis = math.sqrt((1.0 + lam) / 2.0)
        worst = max(worst, abs(est.mean - heis))
    return _result(
        6,
        "cross-picture consistency",
        worst <= 0.01,
        f"max |MC - closed form| over grid {worst:.2e} (limit 0.01)",
    )


def criterion_wide_alphabet() -> CriterionResult:
    """s=100 alphabet: optimum at g=1, F=1/2, and the whole curve is standard."""
    res0 = optimize_gain(squeeze_from_lambda(0.0), 100.0)
    f_err = abs(res0.value - 0.5)
    g_err = abs(res0.argmax[0] - 1.0)
    worst_curve = 0.0
    for lam in default_lambda_grid():
        res = optimize_gain(squeeze_from_lambda(lam), 100.0)
        worst_curve = max(worst_curve, abs(res.value - (1.0 + lam) / 2.0))
    passed = f_err <= 1e-3 and g_err <= 1e-3 and worst_curve <= 0.01
    return _result(
        7,
        "wide alphabet",
        passed,
        f"|F(0)-0.5|={f_err:.2e}, |g*-1|={g_err:.2e} (limits 1e-3); "
        f"max curve gap vs (1+lam)/2 {worst_curve:.2e} (limit 0.01)",
    )


def criterion_narrow_alphabet() -> CriterionResult:
    """s=0.2 alphabet at lam=0 brackets the Gaussian classical limit."""
    res = optimize_gain(squeeze_from_lambda(0.0), 0.2)
    in_bracket = 0.928 <= res.value <= 0.936
    bfk = bfk_classical_limit(0.2).value
    bfk_exact = abs(bfk - 27.0 / 29.0) <= 1e-12 and abs(bfk - 0.9310345) <= 5e-8
    s = 0.2
    g_identity = abs(res.argmax[0] - 2.0 * s * s / (1.0 + 2.0 * s * s)) <= 1e-6
    passed = in_bracket and bfk_exact and g_identity
    return _result(
        8,
        "narrow alphabet classical limit",
        passed,
        f"F(0)={res.value:.6f} in [0.928, 0.936]: {in_bracket}; "
        f"classical limit {bfk:.7f} exact: {bfk_exact}; "
        f"g* identity within 1e-6: {g_identity}",
    )


def criterion_circle_line_equivalence() -> CriterionResult:
    """Circle and line MC curves agree within 3 combined standard errors."""
    grid = default_lambda_grid()
    amp = 5.0
    failures = []
    worst_excess = -math.inf
    for i, lam in enumerate(grid):
        sq = squeeze_from_lambda(lam)
        line = mc_average_fidelity(
            LineTailored(), ComplexAmplitude(amp, 0.0), sq, 100_000, _seed(900 + i)
        )
        theta = np.random.default_rng(_seed(950 + i)).uniform(0.0, 2.0 * math.pi)
        circle = mc_average_fidelity(
            CircleTailored(radius=amp),
            ComplexAmplitude(amp * math.cos(theta), amp * math.sin(theta)),
            sq,
            100_000,
            _seed(975 + i),
        )
        diff = abs(line.mean - circle.mean)
        allowance = 3.0 * (line.std_error + circle.std_error)
        worst_excess = max(worst_excess, diff - allowance)
        if diff > allowance:
            failures.append((lam, diff, allowance))
    if failures:
        lam, diff, allowance = max(failures, key=lambda t: t[1] - t[2])
        detail = (
            f"{len(failures)}/{len(grid)} grid points exceed 3(se_line+se_circle); "
            f"worst at lam={lam:.3f}: |diff|={diff:.2e} vs allowance {allowance:.2e} "
            f"(systematic finite-amplitude offset, see docs)"
        )
    else:
        detail = f"all grid points within allowance (worst slack {-worst_excess:.2e})"
    return _result(9, "circle/line equivalence", not failures, detail)


def _property_oracle() -> tuple[bool, str]:
    rng = np.random.default_rng(_seed(10))
    worst = 0.0
    for _ in range(1000):
        lam = rng.uniform(0.0, 0.95)
        sq = squeeze_from_lambda(lam)
        eta = rng.uniform(0.0, math.pi / 4)
        g2 = rng.uniform(0.0, 2.0)
        g = rng.uniform(0.0, 2.0)
        plus, minus = output_coefficients_tailored(
            sq, ProtocolSettings(eta=eta, g1=g1_of_eta(eta), g2=g2)
        )
        v = variances_tailored(sq, eta, g2)
        worst = max(worst, abs(v.v_plus - plus.variance()), abs(v.v_minus - minus.variance()))
        vs = variance_standard_gain(sq, g)
        worst = max(worst, abs(vs.v_plus - standard_gain_coefficients(sq, g).variance()))
    return worst <= 1e-12, f"oracle worst |closed-form - sum-of-squares| {worst:.2e}"


def _property_displacement_argmax() -> tuple[bool, str]:
    rng = np.random.default_rng(_seed(11))
    offsets = np.linspace(-1.0, 1.0, 201)
    dx = offsets[:, None]
    dy = offsets[None, :]
    centre = (100, 100)
    for _ in range(100):
        lam = rng.uniform(0.0, 0.999)
        sq = squeeze_from_lambda(lam)
        alpha = ComplexAmplitude(rng.uniform(-5, 5), rng.uniform(-5, 5))
        beta = ComplexAmplitude(rng.uniform(-5, 5), rng.uniform(-5, 5))
        eps = optimal_displacement(alpha, beta, sq)
        ex = eps.x + dx
        ey = eps.y + dy
        f = np.exp(
            transfer_exponent(alpha.x - ex, alpha.y - ey, alpha.x - beta.x, alpha.y - beta.y, lam)
        )
        best = np.unravel_index(int(np.argmax(f)), f.shape)
        if best != centre:
            return False, f"grid beat the analytic optimum at lam={lam:.3f}"
        if np.count_nonzero(f >= f[centre]) != 1:
            return False, f"ties away from the optimum at lam={lam:.3f}"
    return True, "analytic displacement dominates all 201x201 grid perturbations (100 cases)"


def _property_perfect_knowledge() -> tuple[bool, str]:
    rng = np.random.default_rng(_seed(12))
    worst = 0.0
    for _ in range(1000):
        lam = rng.uniform(0.0, 0.999)
        sq = squeeze_from_lambda(lam)
        alpha = ComplexAmplitude(rng.uniform(-5, 5), rng.uniform(-5, 5))
        beta = ComplexAmplitude(rng.uniform(-5, 5), rng.uniform(-5, 5))
        eps = optimal_displacement(alpha, beta, sq)
        worst = max(worst, abs(one_shot_fidelity(alpha, beta, eps, sq).value - 1.0))
    return worst <= 1e-12, f"perfect-knowledge worst |F - 1| {worst:.2e}"


def _property_closed_form_vs_quadrature() -> tuple[bool, str]:
    worst = 0.0
    for lam in (0.0, 0.3, 0.6, 0.9, 0.99):
        sq = squeeze_from_lambda(lam)
        for g in (0.0, 0.5, 1.0, 1.5, 2.0):
            for s in (0.1, 0.2, 0.5, 1.0, 2.0):
                closed = gaussian_weighted_fidelity(sq, g, s)
                quad = gaussian_weighted_fidelity_quadrature(sq, g, s, s, order=64)
                worst = max(worst, abs(closed - quad))
    return worst <= 1e-6, f"closed form vs quadrature worst gap {worst:.2e} on 125-point grid"


def criterion_property_suites() -> CriterionResult:
    """Oracle equality, displacement argmax, perfect knowledge, quadrature."""
    checks = [
        _property_oracle(),
        _property_displacement_argmax(),
        _property_perfect_knowledge(),
        _property_closed_form_vs_quadrature(),
    ]
    passed = all(ok for ok, _ in checks)
    return _result(10, "property suites", passed, "; ".join(msg for _, msg in checks))


ALL_CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_standard_baseline,
    criterion_line_limit,
    criterion_full_tailoring_limit,
    criterion_fig3_asymptotes,
    criterion_curve_ordering,
    criterion_cross_picture,
    criterion_wide_alphabet,
    criterion_narrow_alphabet,
    criterion_circle_line_equivalence,
    criterion_property_suites,
)


def run_all() -> list[CriterionResult]:
    """Run every acceptance criterion in order."""
    return [criterion() for criterion in ALL_CRITERIA]
