"""Regression design matrices and separable least-squares profile criteria.

Fixing the nonlinear parameters, the amplitudes solve an ordinary linear
least-squares problem; substituting the solved amplitudes back leaves the
profile residual criteria R (full four-column design), R1 (sinusoid columns
only) and R2 (chirp columns only) as functions of the nonlinear parameters
alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import TWO_PI, _as_signal

# condition estimate above which the normal equations are declared degenerate
COND_LIMIT = 1e12

SIN_KINDS = ("cos(alpha*t)", "sin(alpha*t)")
CHIRP_KINDS = ("cos(beta*t^2)", "sin(beta*t^2)")


class DegenerateDesignError(RuntimeError):
    """Design columns are collinear to working precision."""


@dataclass(frozen=True)
class DesignMatrix:
    entries: np.ndarray
    column_kinds: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _sin_cols(alpha: float, n: int) -> np.ndarray:
    t = np.arange(1, n + 1, dtype=float)
    return np.column_stack([np.cos(alpha * t), np.sin(alpha * t)])


def _chirp_cols(beta: float, n: int) -> np.ndarray:
    t2 = np.arange(1, n + 1, dtype=float) ** 2
    ang = np.mod(beta * t2, TWO_PI)
    return np.column_stack([np.cos(ang), np.sin(ang)])


def build_sin(alpha: float, n: int) -> DesignMatrix:
    """Two-column design, row t = (cos(alpha t), sin(alpha t))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return DesignMatrix(_sin_cols(alpha, n), SIN_KINDS)


def build_chirp(beta: float, n: int) -> DesignMatrix:
    """Two-column design, row t = (cos(beta t^2), sin(beta t^2))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return DesignMatrix(_chirp_cols(beta, n), CHIRP_KINDS)


def build_full(alpha: float, beta: float, n: int) -> DesignMatrix:
    """Four-column design, row t = (cos(alpha t), sin(alpha t), cos(beta t^2), sin(beta t^2))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    entries = np.hstack([_sin_cols(alpha, n), _chirp_cols(beta, n)])
    return DesignMatrix(entries, SIN_KINDS + CHIRP_KINDS)


def _solve(y: np.ndarray, Z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares amplitudes and residual for a fixed design."""
    coef, _, rank, sv = np.linalg.lstsq(Z, y, rcond=None)
    if rank < Z.shape[1] or sv[0] > COND_LIMIT * sv[-1]:
        raise DegenerateDesignError(
            f"design is singular to working precision (condition ~ {sv[0] / max(sv[-1], 1e-300):.2e})"
        )
    return coef, y - Z @ coef


def profile_linear(y, Z: DesignMatrix | np.ndarray) -> np.ndarray:
    """Amplitude solve for fixed nonlinear parameters.

    Raises DegenerateDesignError when the columns are collinear to working
    precision (condition estimate above COND_LIMIT), e.g. both frequencies 0.
    """
    y = _as_signal(y)
    mat = Z.entries if isinstance(Z, DesignMatrix) else np.asarray(Z, dtype=float)
    coef, _ = _solve(y, mat)
    return coef


def _profile_rss(y: np.ndarray, Z: np.ndarray) -> float:
    _, resid = _solve(y, Z)
    return float(resid @ resid)


def criterion_R(y, alpha: float, beta: float) -> float:
    """Residual sum of squares after projecting out the optimal amplitudes
    of the full four-column design; satisfies 0 <= R <= y'y."""
    y = _as_signal(y)
    n = y.size
    return _profile_rss(y, np.hstack([_sin_cols(alpha, n), _chirp_cols(beta, n)]))


def criterion_R1(y, alpha: float) -> float:
    """Profile criterion restricted to the sinusoid columns."""
    y = _as_signal(y)
    return _profile_rss(y, _sin_cols(alpha, y.size))


def criterion_R2(y1, beta: float) -> float:
    """Profile criterion restricted to the chirp columns."""
    y1 = _as_signal(y1)
    return _profile_rss(y1, _chirp_cols(beta, y1.size))
