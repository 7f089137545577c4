"""Closed-form asymptotic covariance of the frequency estimators.

Each component contributes a 3x3 information-style block; the scaled
estimator errors are asymptotically normal with per-block covariance
``sigma2 * c * inv(block)``, where ``c`` is the sum of squared linear-process
coefficients. Finite-n variances follow by undoing the rate scaling:
amplitudes at 1/n, frequencies at 1/n^3, frequency rates at 1/n^5.

The blocks are inverted numerically; their closed-form inverse entries are
pinned down in the test suite instead of being transcribed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import MultiParams, NoiseSpec


@dataclass(frozen=True)
class AsymReport:
    """Per-parameter asymptotic variances (finite-n scaling applied) plus the
    unscaled per-component covariance blocks ``sigma2 * c * inv(block)``."""

    variances: dict[str, float]
    sin_covariances: tuple[np.ndarray, ...]
    chirp_covariances: tuple[np.ndarray, ...]
    c: float
    sigma2: float
    n: int

    def standard_errors(self) -> dict[str, float]:
        return {name: float(np.sqrt(v)) for name, v in self.variances.items()}


def c_constant(spec: NoiseSpec) -> float:
    """Sum of squared linear-process coefficients."""
    return float(sum(a * a for a in spec.coeffs.values()))


def sigma_block_sin(A: float, B: float) -> np.ndarray:
    """Information-style block of one sinusoid component."""
    power = A * A + B * B
    if power <= 0.0:
        raise ValueError("sinusoid component power must be positive")
    return np.array(
        [
            [0.5, 0.0, B / 4.0],
            [0.0, 0.5, -A / 4.0],
            [B / 4.0, -A / 4.0, power / 6.0],
        ]
    )


def sigma_block_chirp(C: float, D: float) -> np.ndarray:
    """Information-style block of one chirp component."""
    power = C * C + D * D
    if power <= 0.0:
        raise ValueError("chirp component power must be positive")
    return np.array(
        [
            [0.5, 0.0, D / 6.0],
            [0.0, 0.5, -C / 6.0],
            [D / 6.0, -C / 6.0, power / 10.0],
        ]
    )


def asym_variances(params: MultiParams, sigma2: float, c: float, n: int) -> AsymReport:
    """Asymptotic variances of every parameter of `params` at sample size `n`.

    Cross-component covariances vanish (the full information matrix is block
    diagonal), so the report carries one 3x3 covariance per component.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if sigma2 < 0.0:
        raise ValueError("sigma2 must be nonnegative")
    scale = sigma2 * c
    variances: dict[str, float] = {}
    sin_covs = []
    for j, (A, B, _) in enumerate(params.sinusoids, start=1):
        cov = scale * np.linalg.inv(sigma_block_sin(A, B))
        sin_covs.append(cov)
        variances[f"A{j}"] = cov[0, 0] / n
        variances[f"B{j}"] = cov[1, 1] / n
        variances[f"alpha{j}"] = cov[2, 2] / n**3
    chirp_covs = []
    for k, (C, D, _) in enumerate(params.chirps, start=1):
        cov = scale * np.linalg.inv(sigma_block_chirp(C, D))
        chirp_covs.append(cov)
        variances[f"C{k}"] = cov[0, 0] / n
        variances[f"D{k}"] = cov[1, 1] / n
        variances[f"beta{k}"] = cov[2, 2] / n**5
    return AsymReport(
        variances=variances,
        sin_covariances=tuple(sin_covs),
        chirp_covariances=tuple(chirp_covs),
        c=c,
        sigma2=sigma2,
        n=n,
    )


def plug_in_sigma2c(residual) -> float:
    """Estimate the product ``sigma2 * c`` from a fit residual.

    Averages the residual periodogram over the Fourier grid; for a linear
    process this mean approaches ``sigma2 * sum a(j)^2``. Extension beyond
    the closed-form reports, used only when the noise model is unknown.
    """
    residual = np.asarray(residual, dtype=float)
    n = residual.size
    if n < 2:
        raise ValueError("residual must have at least 2 samples")
    return float(np.mean(_kernels.i1_scan(residual, 1, n)))
