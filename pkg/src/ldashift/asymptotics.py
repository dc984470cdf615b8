"""Closed-form asymptotic risk in the proportional limit.

Covers the pseudo-inverse classifier in both the under- and over-parametrized
regime, its balanced special case, the ridge-regularized classifier, and the
Marchenko-Pastur Stieltjes transform that drives the regularized formulas.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    AtomAtZero,
    GAMMA_ONE_TOL,
    InvalidGamma,
    InvalidLambda,
    RegimeConfig,
    std_normal_cdf,
)


class Regime(enum.Enum):
    UNDER = "under"
    OVER = "over"
    REGULARIZED = "regularized"


@dataclass(frozen=True)
class AsymptoticRisk:
    arg0: float
    arg1: float
    risk: float
    regime: Regime


def _mp_discriminant(gamma: float, zeta: float) -> float:
    d = (zeta - gamma - 1.0) ** 2 - 4.0 * gamma
    # Rounding can push the radicand a hair below zero at the spectrum edge.
    if -1e-12 < d < 0.0:
        return 0.0
    return d


def _check_mp_args(gamma: float, zeta: float) -> None:
    if not gamma > 0:
        raise InvalidGamma(f"gamma must be positive, got {gamma}")
    if zeta > 0:
        raise ValueError(f"zeta must be <= 0, got {zeta}")
    if zeta == 0.0 and gamma >= 1.0:
        raise AtomAtZero(
            "the Marchenko-Pastur law has an atom at 0 for gamma >= 1; "
            "m(0) diverges"
        )


def mp_stieltjes(gamma: float, zeta: float) -> float:
    """Stieltjes transform of the Marchenko-Pastur law at a real zeta <= 0.

    Algebraically (1 - gamma - zeta - sqrt((zeta-gamma-1)^2 - 4 gamma))
    / (2 gamma zeta); evaluated in the cancellation-free conjugate form
    2 / (1 - gamma - zeta + sqrt(...)), which also yields the analytic
    limit 1/(1-gamma) at zeta = 0 without a special branch for gamma < 1.
    """
    _check_mp_args(gamma, zeta)
    root = math.sqrt(_mp_discriminant(gamma, zeta))
    return 2.0 / (1.0 - gamma - zeta + root)


def mp_stieltjes_deriv(gamma: float, zeta: float) -> float:
    """Derivative of mp_stieltjes in zeta, i.e. the second inverse moment.

    Computed from the conjugate form m = 2/S as -2 S'/S^2 with
    S' = -1 + (zeta - gamma - 1)/sqrt(...), stable down to zeta = 0 where it
    reduces to 1/(1-gamma)^3 for gamma < 1.
    """
    _check_mp_args(gamma, zeta)
    root = math.sqrt(_mp_discriminant(gamma, zeta))
    s = 1.0 - gamma - zeta + root
    s_prime = -1.0 + (zeta - gamma - 1.0) / root
    return -2.0 * s_prime / (s * s)


def _g(gamma0: float, gamma1: float, delta2: float, label: int) -> float:
    return -0.5 * (delta2 + (-1.0) ** label * (gamma1 - gamma0))


def _k(gamma0: float, gamma1: float, delta2: float) -> float:
    return math.sqrt(delta2 + gamma0 + gamma1)


def theorem1_risk(cfg: RegimeConfig) -> AsymptoticRisk:
    """Limiting risk of the pseudo-inverse classifier, both regimes.

    The Phi-argument for class l is
    (g_l / (1-gamma) + (-1)^l ln(gamma0/gamma1)) * (1-gamma)^{3/2} / k
    below the interpolation point, with 1-gamma replaced by gamma(gamma-1)
    and (1-gamma)^{3/2} by (gamma-1)^{3/2} above it.
    """
    if cfg.lam is not None:
        raise InvalidLambda("use theorem2_risk when a ridge level is set")
    cfg.validate()
    gamma = cfg.gamma
    k = _k(cfg.gamma0, cfg.gamma1, cfg.delta2)
    log_ratio = math.log(cfg.gamma0 / cfg.gamma1)
    args = []
    for label in (0, 1):
        g = _g(cfg.gamma0, cfg.gamma1, cfg.delta2, label)
        shift = (-1.0) ** label * log_ratio
        if gamma < 1.0:
            arg = (g / (1.0 - gamma) + shift) * (1.0 - gamma) ** 1.5 / k
        else:
            arg = (g / (gamma * (gamma - 1.0)) + shift) * (gamma - 1.0) ** 1.5 / k
        args.append(arg)
    risk = cfg.pi0 * std_normal_cdf(args[0]) + cfg.pi1 * std_normal_cdf(args[1])
    regime = Regime.UNDER if gamma < 1.0 else Regime.OVER
    return AsymptoticRisk(args[0], args[1], risk, regime)


def theorem1_balanced_risk(gamma: float, delta2: float) -> float:
    """Balanced special case (gamma0 = gamma1, even test priors).

    Phi(-delta2 sqrt(1-gamma) / (2 sqrt(delta2 + 4 gamma))) below the
    interpolation point and Phi(-delta2 sqrt(gamma-1) / (2 gamma sqrt(...)))
    above it; equals theorem1_risk at gamma0 = gamma1 = 2 gamma.
    """
    if not gamma > 0:
        raise InvalidGamma(f"gamma must be positive, got {gamma}")
    if abs(gamma - 1.0) < GAMMA_ONE_TOL:
        raise InvalidGamma("balanced asymptotic risk is undefined at gamma = 1")
    if not delta2 >= 0:
        raise InvalidGamma(f"delta2 must be nonnegative, got {delta2}")
    root = math.sqrt(delta2 + 4.0 * gamma)
    if gamma < 1.0:
        arg = -delta2 * math.sqrt(1.0 - gamma) / (2.0 * root)
    else:
        arg = -delta2 * math.sqrt(gamma - 1.0) / (2.0 * gamma * root)
    return std_normal_cdf(arg)


def theorem2_risk(cfg: RegimeConfig) -> AsymptoticRisk:
    """Limiting risk of the ridge-regularized classifier.

    The Phi-argument for class l is
    (g_l m(-lambda) + (-1)^l ln(gamma0/gamma1)) / (k sqrt(m'(-lambda)))
    with m the Marchenko-Pastur Stieltjes transform at ratio gamma.
    """
    if cfg.lam is None or not cfg.lam > 0:
        raise InvalidLambda(f"theorem2_risk needs lambda > 0, got {cfg.lam}")
    cfg.validate()
    gamma = cfg.gamma
    m = mp_stieltjes(gamma, -cfg.lam)
    dm = mp_stieltjes_deriv(gamma, -cfg.lam)
    k = _k(cfg.gamma0, cfg.gamma1, cfg.delta2)
    log_ratio = math.log(cfg.gamma0 / cfg.gamma1)
    args = [
        (_g(cfg.gamma0, cfg.gamma1, cfg.delta2, label) * m + (-1.0) ** label * log_ratio)
        / (k * math.sqrt(dm))
        for label in (0, 1)
    ]
    risk = cfg.pi0 * std_normal_cdf(args[0]) + cfg.pi1 * std_normal_cdf(args[1])
    return AsymptoticRisk(args[0], args[1], risk, Regime.REGULARIZED)


def asymptotic_risk(cfg: RegimeConfig) -> AsymptoticRisk:
    """Dispatch on the presence of the ridge level."""
    return theorem1_risk(cfg) if cfg.lam is None else theorem2_risk(cfg)
