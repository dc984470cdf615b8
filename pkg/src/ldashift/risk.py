"""Exact conditional misclassification risk, plus a Monte Carlo oracle.

Whenever the mixture is known, the risk of a linear rule is a two-term Phi
expression in the standardized margins; the sampled test-set path exists only
as an independent cross-check of that closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GaussianMixtureModel, LinearClassifier, std_normal_cdf

_SEED_MOD = 2**63


@dataclass(frozen=True)
class RiskReport:
    """Per-class standardized margins and the prior-weighted error.

    q0/q1 are None for a degenerate (constant) rule, where the risk is the
    prior mass of whichever class the rule always rejects.
    """

    q0: float | None
    q1: float | None
    err0: float
    err1: float
    risk: float
    degenerate: bool = False


def conditional_risk(clf: LinearClassifier, model: GaussianMixtureModel) -> RiskReport:
    """Exact risk of clf under the mixture; no sampling involved.

    q0 = (beta'(alpha - mu0) + b) / ||beta||_Sigma and
    q1 = (beta'(mu1 - alpha) - b) / ||beta||_Sigma, risk = pi0 Phi(q0) + pi1 Phi(q1).
    """
    beta = clf.beta
    norm_sq = float(beta @ model.sigma_apply(beta))
    if norm_sq <= 0.0:
        # Constant rule: label 1 iff b >= 0 (tie included), so one class is
        # always wrong and the other always right.
        if clf.b >= 0:
            return RiskReport(None, None, 1.0, 0.0, model.pi0, degenerate=True)
        return RiskReport(None, None, 0.0, 1.0, model.pi1, degenerate=True)
    norm = math.sqrt(norm_sq)
    q0 = (float(beta @ (clf.alpha - model.mu0)) + clf.b) / norm
    q1 = (float(beta @ (model.mu1 - clf.alpha)) - clf.b) / norm
    err0 = std_normal_cdf(q0)
    err1 = std_normal_cdf(q1)
    return RiskReport(q0, q1, err0, err1, model.pi0 * err0 + model.pi1 * err1)


def empirical_risk(
    clf: LinearClassifier, model: GaussianMixtureModel, m_test: int, seed: int
) -> float:
    """Monte Carlo misclassification estimate on a deterministic test set.

    Class counts are rounded quotas of pi0 * m_test rather than binomial
    draws, and the per-class error fractions are recombined with the exact
    priors, so quota rounding does not bias the estimate.
    """
    if m_test < 1:
        raise ValueError(f"m_test must be >= 1, got {m_test}")
    m0 = int(round(model.pi0 * m_test))
    m0 = min(max(m0, 1), m_test - 1) if m_test >= 2 else m0
    m1 = m_test - m0
    fracs = []
    for label, m in ((0, m0), (1, m1)):
        if m == 0:
            fracs.append(0.0)
            continue
        rng = np.random.default_rng((seed % _SEED_MOD, label, 0x7E57))
        z = rng.standard_normal((m, model.p))
        if model.sigma_factor is not None:
            z = z @ model.sigma_factor.T
        x = z + (model.mu0 if label == 0 else model.mu1)
        labels = clf.classify(x)
        fracs.append(float(np.mean(labels != label)))
    return model.pi0 * fracs[0] + model.pi1 * fracs[1]
