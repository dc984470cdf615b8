"""Sample generation and empirical (regularized) Fisher LDA fits.

Dataset rows come from counter-based per-(seed, class, index) streams, so a
dataset is bit-identical no matter in which order, or on how many workers, its
rows are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GaussianMixtureModel, LinearClassifier, TooFewSamples

_SEED_MOD = 2**63


@dataclass(frozen=True)
class Dataset:
    class0: np.ndarray  # n0 x p
    class1: np.ndarray  # n1 x p
    seed: int

    def __post_init__(self):
        if self.class0.shape[0] < 2 or self.class1.shape[0] < 2:
            raise TooFewSamples(
                f"need at least 2 samples per class, got n0={self.class0.shape[0]}, "
                f"n1={self.class1.shape[0]}"
            )
        if self.class0.shape[1] != self.class1.shape[1]:
            raise ValueError("class blocks must share the feature dimension")

    @property
    def p(self) -> int:
        return self.class0.shape[1]

    @property
    def n0(self) -> int:
        return self.class0.shape[0]

    @property
    def n1(self) -> int:
        return self.class1.shape[0]

    def swapped(self) -> "Dataset":
        """The same data with the class roles exchanged."""
        return Dataset(class1=self.class0, class0=self.class1, seed=self.seed)


def _class_block(model: GaussianMixtureModel, label: int, n: int, seed: int) -> np.ndarray:
    mu = model.mu0 if label == 0 else model.mu1
    rows = np.empty((n, model.p))
    for i in range(n):
        rng = np.random.default_rng((seed % _SEED_MOD, label, i))
        z = rng.standard_normal(model.p)
        if model.sigma_factor is not None:
            z = model.sigma_factor @ z
        rows[i] = mu + z
    return rows


def generate_dataset(
    model: GaussianMixtureModel, n0: int, n1: int, seed: int
) -> Dataset:
    """Draw n0 + n1 i.i.d. rows, row i of class l being mu_l + L z_{l,i}."""
    if n0 < 2 or n1 < 2:
        raise TooFewSamples(f"need n0 >= 2 and n1 >= 2, got n0={n0}, n1={n1}")
    return Dataset(
        class0=_class_block(model, 0, n0, seed),
        class1=_class_block(model, 1, n1, seed),
        seed=seed,
    )


def _pooled_spectrum(data: Dataset):
    """Economy SVD of the centered class stack.

    Returns (mean0, mean1, eigvals, Vt) where eigvals are the (possibly zero)
    top min(n, p) eigenvalues of the pooled covariance with divisor n-2 and Vt
    holds the matching eigenvectors as rows. Working on the n x p stack instead
    of the p x p covariance keeps the cost at O(min(n,p)^2 max(n,p)).
    """
    m0 = data.class0.mean(axis=0)
    m1 = data.class1.mean(axis=0)
    centered = np.vstack([data.class0 - m0, data.class1 - m1])
    n = data.n0 + data.n1
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    return m0, m1, s * s / (n - 2), vt


def fit_lda(data: Dataset) -> LinearClassifier:
    """Empirical Fisher discriminant with a pseudo-inverted pooled covariance.

    alpha = (mean0 + mean1)/2, beta = pinv(Sigma_hat) (mean0 - mean1),
    b = ln(n1/n0). The pseudo-inverse uses the rank-revealing cutoff
    max(p, n-2) * eps * sigma_max on the covariance spectrum.
    """
    m0, m1, eig, vt = _pooled_spectrum(data)
    d = m0 - m1
    n = data.n0 + data.n1
    cutoff = max(data.p, n - 2) * np.finfo(float).eps * (eig[0] if eig.size else 0.0)
    inv = np.zeros_like(eig)
    keep = eig > cutoff
    inv[keep] = 1.0 / eig[keep]
    beta = vt.T @ (inv * (vt @ d))
    return LinearClassifier(alpha=(m0 + m1) / 2, beta=beta, b=math.log(data.n1 / data.n0))


def fit_regularized_lda(data: Dataset, lam: float) -> LinearClassifier:
    """Ridge variant: beta solves (Sigma_hat + lam I) beta = mean0 - mean1.

    Solved exactly through the covariance spectrum; the component of the mean
    difference outside the sample range sees only the lam I part.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    m0, m1, eig, vt = _pooled_spectrum(data)
    d = m0 - m1
    w = vt @ d
    beta = vt.T @ (w / (eig + lam))
    if vt.shape[0] < data.p:
        # mean-difference component outside the sample range sees only lam I
        beta += (d - vt.T @ w) / lam
    return LinearClassifier(alpha=(m0 + m1) / 2, beta=beta, b=math.log(data.n1 / data.n0))


def bayes_classifier(model: GaussianMixtureModel) -> LinearClassifier:
    """Population-optimal rule: Sigma^{-1}(mu0 - mu1) with the log-prior shift."""
    d = model.mu0 - model.mu1
    return LinearClassifier(
        alpha=(model.mu0 + model.mu1) / 2,
        beta=model.sigma_solve(d),
        b=math.log(model.pi1 / model.pi0),
    )
