"""Monte Carlo sweep engine and the proof-functional check suites.

Sweeps fit the (regularized) discriminant on freshly generated data at every
grid point and score it with the exact conditional risk, so the only noise in
a table row is fit-to-fit variation. Per-replication seeds are derived from
(master_seed, grid index, replication), which makes tables byte-identical
under any evaluation order or worker count.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import GaussianMixtureModel, RegimeConfig, TooFewSamples, GAMMA_ONE_TOL
from .estimation import fit_lda, fit_regularized_lda, generate_dataset
from .risk import conditional_risk
from .asymptotics import asymptotic_risk

NEAR_INTERPOLATION_BAND = (0.9, 1.1)
FLAG_NEAR_INTERPOLATION = "near_interpolation"


class SweepMode(enum.Enum):
    GAMMA = "gamma"
    IMBALANCE = "imbalance"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a grid of gamma values at fixed (n, ratio), or a grid of
    class ratios at fixed (n0, gamma0)."""

    mode: SweepMode
    grid: tuple[float, ...]
    delta2: float
    n: int | None = None  # GAMMA mode: total sample count
    ratio: float | None = None  # GAMMA mode: n1/n0
    n0: int | None = None  # IMBALANCE mode: class-0 count
    gamma0: float | None = None  # IMBALANCE mode: p/n0
    pi0: float = 0.5
    lam: float | None = None
    reps: int = 100
    master_seed: int = 42

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if not self.grid or any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be nonempty and strictly ascending")
        if self.mode is SweepMode.GAMMA:
            if self.n is None or self.ratio is None:
                raise ValueError("gamma sweep needs n and ratio")
            if self.ratio <= 0:
                raise ValueError("ratio must be positive")
        else:
            if self.n0 is None or self.gamma0 is None:
                raise ValueError("imbalance sweep needs n0 and gamma0")


@dataclass(frozen=True)
class CurveRow:
    mode: str
    grid: float
    gamma0: float
    gamma1: float
    delta2: float
    lam: float | None
    pi0: float
    n0: int
    n1: int
    p: int
    reps: int
    theory_risk: float | None
    mc_mean: float
    mc_std: float
    flag: str


@dataclass(frozen=True)
class CurveTable:
    spec: SweepSpec
    rows: tuple[CurveRow, ...]


def make_default_model(p: int, delta2: float, pi0: float = 0.5) -> GaussianMixtureModel:
    """Whitened canonical model: Sigma = I, means +-(Delta/2) e1.

    Realizes squared SNR delta2 without loss of generality, since the risk is
    invariant under joint whitening of model and classifier.
    """
    mu0 = np.zeros(p)
    mu0[0] = math.sqrt(delta2) / 2.0
    return GaussianMixtureModel(p=p, mu0=mu0, mu1=-mu0, pi0=pi0)


def derive_seed(master_seed: int, grid_index: int, rep: int) -> int:
    """Stable 63-bit seed for one (grid point, replication) cell."""
    ss = np.random.SeedSequence((master_seed % 2**63, grid_index, rep))
    return int(ss.generate_state(1, np.uint64)[0] >> 1)


def _point_geometry(spec: SweepSpec, value: float):
    """(n0, n1, p, gamma0_asym, gamma1_asym) for one grid value."""
    if spec.mode is SweepMode.GAMMA:
        n0 = int(round(spec.n / (1.0 + spec.ratio)))
        n1 = spec.n - n0
        p = math.ceil(value * spec.n)
        g0 = value * (1.0 + spec.ratio)
        g1 = g0 / spec.ratio
    else:
        n0 = spec.n0
        n1 = int(round(value * spec.n0))
        p = math.ceil(spec.gamma0 * spec.n0)
        g0 = spec.gamma0
        g1 = spec.gamma0 / value
    return n0, n1, p, g0, g1


def run_sweep(spec: SweepSpec) -> CurveTable:
    """Evaluate theory and Monte Carlo risk at every grid point."""
    rows = []
    for gi, value in enumerate(spec.grid):
        n0, n1, p, g0, g1 = _point_geometry(spec, value)
        if n0 < 2 or n1 < 2:
            raise TooFewSamples(
                f"grid value {value} implies n0={n0}, n1={n1}; need >= 2 per class"
            )
        cfg = RegimeConfig(g0, g1, spec.delta2, spec.pi0, spec.lam)
        gamma = cfg.gamma
        if spec.lam is None and abs(gamma - 1.0) < GAMMA_ONE_TOL:
            theory = None
        else:
            theory = asymptotic_risk(cfg).risk
        flag = (
            FLAG_NEAR_INTERPOLATION
            if NEAR_INTERPOLATION_BAND[0] <= gamma <= NEAR_INTERPOLATION_BAND[1]
            else ""
        )
        model = make_default_model(p, spec.delta2, spec.pi0)
        risks = np.empty(spec.reps)
        for rep in range(spec.reps):
            data = generate_dataset(
                model, n0, n1, derive_seed(spec.master_seed, gi, rep)
            )
            if spec.lam is None:
                clf = fit_lda(data)
            else:
                clf = fit_regularized_lda(data, spec.lam)
            risks[rep] = conditional_risk(clf, model).risk
        mc_std = float(np.std(risks, ddof=1)) if spec.reps > 1 else 0.0
        rows.append(
            CurveRow(
                mode=spec.mode.value,
                grid=float(value),
                gamma0=g0,
                gamma1=g1,
                delta2=spec.delta2,
                lam=spec.lam,
                pi0=spec.pi0,
                n0=n0,
                n1=n1,
                p=p,
                reps=spec.reps,
                theory_risk=theory,
                mc_mean=float(np.mean(risks)),
                mc_std=mc_std,
                flag=flag,
            )
        )
    return CurveTable(spec=spec, rows=tuple(rows))


def wishart_trace_check(p: int, n: int, seed: int) -> float:
    """Relative gap between tr(pinv(Z'Z)) and tr(pinv(ZZ')) for a standard
    normal (n-2) x p matrix; zero in exact arithmetic."""
    if p < 2 or n < 2:
        raise ValueError("need p >= 2 and n >= 2")
    rng = np.random.default_rng(seed % 2**63)
    z = rng.standard_normal((n - 2, p))
    t1 = np.trace(np.linalg.pinv(z.T @ z))
    t2 = np.trace(np.linalg.pinv(z @ z.T))
    return abs(t1 - t2) / abs(t1)


def trace_functional_check(gamma: float, n: int, seed: int = 0) -> tuple[float, float]:
    """Relative errors of the simulated first and second inverse moments of
    the normalized Wishart spectrum against 1/(1-gamma) and 1/(1-gamma)^3."""
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0,1)")
    p = math.ceil(gamma * n)
    if p < 2 or n - 2 <= p:
        raise ValueError("n too small for the requested gamma")
    rng = np.random.default_rng(seed % 2**63)
    z = rng.standard_normal((n - 2, p))
    eig = np.linalg.eigvalsh(z.T @ z / (n - 2))
    b = float(np.mean(1.0 / eig))
    b_prime = float(np.mean(1.0 / eig**2))
    t1 = 1.0 / (1.0 - gamma)
    t2 = 1.0 / (1.0 - gamma) ** 3
    return abs(b - t1) / t1, abs(b_prime - t2) / t2
