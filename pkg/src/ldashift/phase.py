"""Phase-transition analysis of the imbalance curves.

Knot locations, the sign of the risk derivative at the balanced point,
risk-vs-ratio curves, and their qualitative shape classification.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import CurveTooShort, GAMMA_ONE_TOL, InvalidGamma, OnKnot, RegimeConfig
from .asymptotics import asymptotic_risk, theorem2_risk

GAMMA_A = 2.0
KNOT_NEIGHBORHOOD = 1e-9


@dataclass(frozen=True)
class PhaseKnots:
    gamma_a: float
    gamma_b: float


@dataclass(frozen=True)
class ImbalanceCurve:
    """Asymptotic risk as a function of the class ratio n1/n0 at fixed gamma0.

    ratios/risks hold the evaluated grid points; ratios where the combined
    gamma hits 1 (undefined without a ridge) are recorded in skipped_ratios.
    """

    ratios: np.ndarray
    risks: np.ndarray
    gamma0: float
    delta2: float
    pi0: float = 0.5
    lam: float | None = None
    skipped_ratios: tuple[float, ...] = field(default_factory=tuple)


class Behavior(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    OTHER = "other"


class Phase(enum.Enum):
    I = "I"
    II = "II"
    III_CANDIDATE = "III_candidate"


def phase_knots(delta2: float) -> PhaseKnots:
    """Both knots; gamma_a = 2 exactly, gamma_b grows toward 4 with the SNR."""
    if not delta2 >= 0:
        raise ValueError(f"delta2 must be nonnegative, got {delta2}")
    gamma_b = (12.0 - delta2 + math.sqrt(delta2**2 + 40.0 * delta2 + 144.0)) / 8.0
    return PhaseKnots(gamma_a=GAMMA_A, gamma_b=gamma_b)


def derivative_at_balance(
    gamma0: float,
    delta2: float,
    lam: float | None = None,
    pi0: float = 0.5,
) -> float:
    """Central finite difference of the risk in gamma1 at gamma1 = gamma0.

    Step h = 1e-5 * gamma0. Without a ridge the balanced point gamma0 = 2
    sits on the gamma = 1 singularity and is rejected, as is any stencil
    whose two legs straddle it.
    """
    if not gamma0 > 0:
        raise InvalidGamma(f"gamma0 must be positive, got {gamma0}")
    h = 1e-5 * gamma0
    lo = RegimeConfig(gamma0, gamma0 - h, delta2, pi0, lam)
    hi = RegimeConfig(gamma0, gamma0 + h, delta2, pi0, lam)
    if lam is None:
        if abs(gamma0 / 2.0 - 1.0) < GAMMA_ONE_TOL:
            raise InvalidGamma("balanced gamma equals 1 at gamma0 = 2")
        if (lo.gamma - 1.0) * (hi.gamma - 1.0) < 0:
            raise InvalidGamma("finite-difference stencil straddles gamma = 1")
    return (asymptotic_risk(hi).risk - asymptotic_risk(lo).risk) / (2.0 * h)


def imbalance_curve(
    gamma0: float,
    delta2: float,
    ratio_grid,
    lam: float | None = None,
    pi0: float = 0.5,
) -> ImbalanceCurve:
    """Asymptotic risk along a ratio grid r >= 1 with gamma1 = gamma0 / r."""
    grid = np.asarray(ratio_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("ratio_grid must be a nonempty 1-d array")
    if np.any(grid < 1.0):
        raise ValueError("every ratio must be >= 1")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("ratio_grid must be strictly ascending")
    ratios, risks, skipped = [], [], []
    for r in grid:
        cfg = RegimeConfig(gamma0, gamma0 / r, delta2, pi0, lam)
        if lam is None and abs(cfg.gamma - 1.0) < GAMMA_ONE_TOL:
            skipped.append(float(r))
            continue
        ratios.append(float(r))
        risks.append(asymptotic_risk(cfg).risk)
    if not ratios:
        raise InvalidGamma("every grid point sits on the gamma = 1 singularity")
    return ImbalanceCurve(
        ratios=np.array(ratios),
        risks=np.array(risks),
        gamma0=gamma0,
        delta2=delta2,
        pi0=pi0,
        lam=lam,
        skipped_ratios=tuple(skipped),
    )


def _monotone_runs(values, epsilon: float) -> list[list[float]]:
    """Maximal monotone segments as [sign, amplitude] pairs.

    A difference within the epsilon deadband never starts or flips a run; its
    contribution is folded into the current run's amplitude.
    """
    runs: list[list[float]] = []
    for d in np.diff(np.asarray(values, dtype=float)):
        s = 1 if d > 0 else -1
        if runs and (abs(d) <= epsilon or s == runs[-1][0]):
            runs[-1][1] += d
        elif abs(d) > epsilon:
            runs.append([s, d])
    return runs


def sign_pattern(values, epsilon: float) -> tuple[int, ...]:
    """Collapsed sign sequence of consecutive differences.

    Differences within the epsilon deadband inherit the previous sign
    (and are dropped entirely before the first decisive move).
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    return tuple(int(s) for s, _ in _monotone_runs(values, epsilon))


_BEHAVIOR_MAP = {
    (-1, 1): Behavior.I,
    (1, -1): Behavior.II,
    (-1, 1, -1): Behavior.III,
}


def behavior_signature(
    curve: ImbalanceCurve, epsilon: float = 1e-9, tail_fraction: float = 0.25
) -> Behavior:
    """Map the curve's collapsed difference-sign pattern to a behavior class.

    Every curve eventually drifts up toward risk 1/2 as the ratio grows, so a
    trailing ascent is ignored when its amplitude is below tail_fraction times
    the amplitude of the descent before it; a genuine final rise is far larger.
    """
    if curve.risks.size < 8:
        raise CurveTooShort(f"need at least 8 grid points, got {curve.risks.size}")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    runs = _monotone_runs(curve.risks, epsilon)
    if (
        len(runs) >= 2
        and runs[-1][0] == 1
        and abs(runs[-1][1]) < tail_fraction * abs(runs[-2][1])
    ):
        runs = runs[:-1]
    return _BEHAVIOR_MAP.get(tuple(int(s) for s, _ in runs), Behavior.OTHER)


def classify_phase(gamma0: float, delta2: float) -> Phase:
    """Interval membership against the knots.

    PhaseIII is only a candidate: its upper boundary is not pinned down, so
    behavior_signature on the actual curve is the authoritative check.
    """
    if not gamma0 > 0:
        raise InvalidGamma(f"gamma0 must be positive, got {gamma0}")
    knots = phase_knots(delta2)
    if abs(gamma0 - knots.gamma_a) < KNOT_NEIGHBORHOOD or abs(
        gamma0 - knots.gamma_b
    ) < KNOT_NEIGHBORHOOD:
        raise OnKnot(f"gamma0 = {gamma0} sits on a phase knot")
    if gamma0 < knots.gamma_a:
        return Phase.I
    if gamma0 < knots.gamma_b:
        return Phase.II
    return Phase.III_CANDIDATE


def regularized_monotonicity_check(
    delta2: float, lam: float, gamma_grid, tol: float = 1e-10
) -> tuple[bool, float | None]:
    """Whether the balanced ridge risk is nondecreasing along the grid.

    Returns (ok, first offending gamma or None).
    """
    grid = np.asarray(gamma_grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise ValueError("gamma_grid must be strictly ascending")
    risks = [
        theorem2_risk(RegimeConfig(2.0 * g, 2.0 * g, delta2, 0.5, lam)).risk
        for g in grid
    ]
    for i in range(1, len(risks)):
        if risks[i] < risks[i - 1] - tol:
            return False, float(grid[i])
    return True, None
