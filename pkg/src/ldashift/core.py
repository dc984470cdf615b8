"""Domain types, validation, and the standard-normal CDF.

Everything here is immutable after construction and every function is pure,
so objects can be shared freely across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

GAMMA_ONE_TOL = 1e-9


class LdaShiftError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGamma(LdaShiftError):
    pass


class InvalidPrior(LdaShiftError):
    pass


class InvalidDelta(LdaShiftError):
    pass


class InvalidLambda(LdaShiftError):
    pass


class TooFewSamples(LdaShiftError):
    pass


class AtomAtZero(LdaShiftError):
    pass


class CurveTooShort(LdaShiftError):
    pass


class OnKnot(LdaShiftError):
    pass


def std_normal_cdf(x: float) -> float:
    """CDF of the standard normal, erf-based, absolute accuracy <= 1e-12.

    Saturates cleanly at 0/1 for large |x|.
    """
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


@dataclass(frozen=True)
class RegimeConfig:
    """Asymptotic regime parameters.

    gamma0, gamma1 are the limits of p/n0 and p/n1; delta2 is the limiting
    squared signal-to-noise ratio; pi0 the test prior of class 0; lam the
    optional ridge level.
    """

    gamma0: float
    gamma1: float
    delta2: float
    pi0: float = 0.5
    lam: float | None = None

    @property
    def gamma(self) -> float:
        """Harmonic-type combined ratio gamma0*gamma1/(gamma0+gamma1)."""
        return self.gamma0 * self.gamma1 / (self.gamma0 + self.gamma1)

    @property
    def pi1(self) -> float:
        return 1.0 - self.pi0

    def validate(self) -> None:
        """Raise the first violated invariant; no-op when all hold."""
        if not (self.gamma0 > 0 and math.isfinite(self.gamma0)):
            raise InvalidGamma(f"gamma0 must be a positive real, got {self.gamma0}")
        if not (self.gamma1 > 0 and math.isfinite(self.gamma1)):
            raise InvalidGamma(f"gamma1 must be a positive real, got {self.gamma1}")
        if not (self.delta2 >= 0 and math.isfinite(self.delta2)):
            raise InvalidDelta(f"delta2 must be nonnegative, got {self.delta2}")
        if not (0.0 < self.pi0 < 1.0):
            raise InvalidPrior(f"pi0 must lie in (0,1), got {self.pi0}")
        if self.lam is not None and not (self.lam >= 0 and math.isfinite(self.lam)):
            raise InvalidLambda(f"lambda must be nonnegative, got {self.lam}")
        if self.lam is None and abs(self.gamma - 1.0) < GAMMA_ONE_TOL:
            raise InvalidGamma(
                "gamma = gamma0*gamma1/(gamma0+gamma1) equals 1; the unregularized "
                "asymptotic risk is undefined there"
            )


def validate_config(cfg: RegimeConfig) -> None:
    """Module-level alias for RegimeConfig.validate."""
    cfg.validate()


@dataclass(frozen=True)
class GaussianMixtureModel:
    """Population parameters of the two-class Gaussian mixture at dimension p.

    sigma_factor is a lower-triangular L with Sigma = L @ L.T; None means the
    identity covariance (the default harness case).
    """

    p: int
    mu0: np.ndarray
    mu1: np.ndarray
    pi0: float = 0.5
    sigma_factor: np.ndarray | None = None

    def __post_init__(self):
        mu0 = np.asarray(self.mu0, dtype=float)
        mu1 = np.asarray(self.mu1, dtype=float)
        object.__setattr__(self, "mu0", mu0)
        object.__setattr__(self, "mu1", mu1)
        if self.p <= 0:
            raise ValueError(f"dimension p must be positive, got {self.p}")
        if mu0.shape != (self.p,) or mu1.shape != (self.p,):
            raise ValueError("mu0 and mu1 must be length-p vectors")
        if not (0.0 < self.pi0 < 1.0):
            raise InvalidPrior(f"pi0 must lie in (0,1), got {self.pi0}")
        if self.sigma_factor is not None:
            L = np.asarray(self.sigma_factor, dtype=float)
            object.__setattr__(self, "sigma_factor", L)
            if L.shape != (self.p, self.p):
                raise ValueError("sigma_factor must be a p-by-p matrix")
            if np.any(np.diag(L) <= 0):
                raise ValueError("sigma_factor must have strictly positive diagonal")

    @property
    def pi1(self) -> float:
        return 1.0 - self.pi0

    def sigma_apply(self, v: np.ndarray) -> np.ndarray:
        """Sigma @ v without forming Sigma when the factor is identity."""
        if self.sigma_factor is None:
            return np.asarray(v, dtype=float)
        L = self.sigma_factor
        return L @ (L.T @ v)

    def sigma_solve(self, v: np.ndarray) -> np.ndarray:
        """Sigma^{-1} @ v via two triangular solves."""
        if self.sigma_factor is None:
            return np.asarray(v, dtype=float)
        L = self.sigma_factor
        return np.linalg.solve(L.T, np.linalg.solve(L, v))

    def snr(self) -> float:
        """Mahalanobis separation (mu0-mu1)' Sigma^{-1} (mu0-mu1)."""
        d = self.mu0 - self.mu1
        return float(d @ self.sigma_solve(d))


@dataclass(frozen=True)
class LinearClassifier:
    """Decision rule: label 0 iff beta'(x - alpha) > b, label 1 otherwise."""

    alpha: np.ndarray
    beta: np.ndarray
    b: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=float))
        object.__setattr__(self, "beta", np.asarray(self.beta, dtype=float))
        if self.alpha.shape != self.beta.shape or self.alpha.ndim != 1:
            raise ValueError("alpha and beta must be same-length vectors")

    def scores(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return (x - self.alpha) @ self.beta

    def classify(self, x: np.ndarray) -> np.ndarray:
        """Labels for one sample or a batch; ties go to label 1."""
        return np.where(self.scores(x) > self.b, 0, 1)
