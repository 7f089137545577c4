"""Joint and sequential least-squares estimators plus BIC order selection.

The joint path refines both nonlinear parameters of a one-component model
simultaneously on the profile criterion R. The sequential path extracts one
component at a time: periodogram argmax on the current residual, Brent
refinement of the single-component profile criterion, amplitude solve at the
refined frequency, subtraction, repeat; all sinusoids are extracted before
any chirp.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import designmat, optimize
from .model import MultiParams, _as_signal

# estimated frequencies are kept strictly inside the open parameter interval
FREQ_CLAMP = 1e-6


@dataclass(frozen=True)
class StageRecord:
    index: int
    kind: str  # "sinusoid" or "chirp"
    initializer: float
    refined: float


@dataclass
class FitResult:
    params: MultiParams
    sse: float
    n: int
    bic: float
    method: str
    trace: tuple[StageRecord, ...] = ()
    asym_se: dict[str, float] | None = None


def bic_value(sse: float, n: int, p: int, q: int) -> float:
    """n ln(SSE) + 2 (3p + 3q) ln(n)."""
    with np.errstate(divide="ignore"):
        return float(n * np.log(sse) + 2.0 * (3 * p + 3 * q) * np.log(n))


def _clamp_freq(x: float) -> float:
    return float(min(max(x, FREQ_CLAMP), np.pi - FREQ_CLAMP))


def _bracket_around(center: float, halfwidth: float, tol: float) -> optimize.Bracket:
    lo = max(FREQ_CLAMP, center - halfwidth)
    hi = min(np.pi - FREQ_CLAMP, center + halfwidth)
    return optimize.Bracket(lo, hi, tol)


JOINT_TOL = 1e-11  # joint movement tolerance; amplitude accuracy is ~n * frequency accuracy


def fit_joint_one(y, tol: float = JOINT_TOL, i2_coarse: int | None = None) -> FitResult:
    """One sinusoid plus one chirp, refined jointly on R(alpha, beta).

    Both nonlinear parameters start at their grid argmaxes and are refined by
    coordinate descent inside a one-grid-step box; amplitudes come from the
    profile solve at the optimum.
    """
    y = _as_signal(y)
    n = y.size
    if n < 6:
        raise ValueError("joint fit needs n >= 6")
    a0 = optimize.argmax_I1_grid(y)
    b0 = optimize.argmax_I2_grid(y, coarse=i2_coarse)
    box_a = _bracket_around(a0, np.pi / n, tol)
    box_b = _bracket_around(b0, np.pi / n**2, tol)
    alpha, beta = optimize.minimize_2d(
        lambda a, b: designmat.criterion_R(y, a, b),
        start=(min(max(a0, box_a.lo), box_a.hi), min(max(b0, box_b.lo), box_b.hi)),
        box=((box_a.lo, box_a.hi), (box_b.lo, box_b.hi)),
        tol=tol,
    )
    alpha, beta = _clamp_freq(alpha), _clamp_freq(beta)
    mu = designmat.profile_linear(y, designmat.build_full(alpha, beta, n))
    sse = designmat.criterion_R(y, alpha, beta)
    params = MultiParams(
        sinusoids=((mu[0], mu[1], alpha),),
        chirps=((mu[2], mu[3], beta),),
    )
    trace = (
        StageRecord(0, "sinusoid", a0, alpha),
        StageRecord(1, "chirp", b0, beta),
    )
    return FitResult(params, sse, n, bic_value(sse, n, 1, 1), "joint", trace)


def fit_sequential_multi(
    y,
    p: int,
    q: int,
    tol: float = optimize.DEFAULT_TOL,
    i2_coarse: int | None = None,
) -> FitResult:
    """Sequential extraction of `p` sinusoids followed by `q` chirps.

    Each stage locates a grid argmax on the current residual, Brent-refines
    the single-component profile criterion within one grid step, re-solves
    the amplitudes at the refined frequency, and subtracts the fitted
    component. Components are reported in extraction order; no early
    stopping happens here even when a stage finds mostly noise.
    """
    y = _as_signal(y)
    n = y.size
    if p < 0 or q < 0:
        raise ValueError("component counts must be nonnegative")
    if n < 6 * (p + q):
        raise ValueError(f"need n >= {6 * (p + q)} samples to fit p={p}, q={q}")
    resid = y.copy()
    sinusoids = []
    chirps = []
    trace = []
    for j in range(p):
        a0 = optimize.argmax_I1_grid(resid)
        bracket = _bracket_around(a0, np.pi / n, tol)
        alpha = _clamp_freq(optimize.minimize_scalar(lambda a: designmat.criterion_R1(resid, a), bracket))
        Z = designmat.build_sin(alpha, n)
        mu = designmat.profile_linear(resid, Z)
        resid = resid - Z.entries @ mu
        sinusoids.append((mu[0], mu[1], alpha))
        trace.append(StageRecord(j, "sinusoid", a0, alpha))
    for k in range(q):
        b0 = optimize.argmax_I2_grid(resid, coarse=i2_coarse)
        bracket = _bracket_around(b0, np.pi / n**2, tol)
        beta = _clamp_freq(optimize.minimize_scalar(lambda b: designmat.criterion_R2(resid, b), bracket))
        Z = designmat.build_chirp(beta, n)
        mu = designmat.profile_linear(resid, Z)
        resid = resid - Z.entries @ mu
        chirps.append((mu[0], mu[1], beta))
        trace.append(StageRecord(p + k, "chirp", b0, beta))
    sse = float(resid @ resid)
    params = MultiParams(sinusoids=tuple(sinusoids), chirps=tuple(chirps))
    return FitResult(params, sse, n, bic_value(sse, n, p, q), "sequential", tuple(trace))


def fit_sequential_one(y, tol: float = optimize.DEFAULT_TOL, i2_coarse: int | None = None) -> FitResult:
    """Two-step sequential fit of one sinusoid and one chirp."""
    return fit_sequential_multi(y, 1, 1, tol=tol, i2_coarse=i2_coarse)


def _truncated_sse(y: np.ndarray, fit: FitResult, p: int, q: int) -> float:
    """SSE using only the first p sinusoid and first q chirp components."""
    n = y.size
    t = np.arange(1, n + 1, dtype=float)
    fitted = np.zeros(n)
    for A, B, alpha in fit.params.sinusoids[:p]:
        fitted += A * np.cos(alpha * t) + B * np.sin(alpha * t)
    t2 = t * t
    for C, D, beta in fit.params.chirps[:q]:
        ang = np.mod(beta * t2, 2.0 * np.pi)
        fitted += C * np.cos(ang) + D * np.sin(ang)
    r = y - fitted
    return float(r @ r)


def select_order_bic(
    y,
    p_max: int,
    q_max: int,
    tol: float = optimize.DEFAULT_TOL,
    i2_coarse: int | None = None,
) -> tuple[int, int, FitResult]:
    """Choose (p, q) minimizing BIC over all pairs up to (p_max, q_max).

    A single sequential fit at (p_max, q_max) supplies the components; each
    candidate pair is scored on the residual of its leading components.
    Sequential stages do not depend on later ones, so truncation matches
    refitting. Ties resolve to the lexicographically smallest pair. Returns
    the winning pair and a fresh fit at that order.
    """
    y = _as_signal(y)
    if p_max < 0 or q_max < 0:
        raise ValueError("p_max and q_max must be nonnegative")
    full = fit_sequential_multi(y, p_max, q_max, tol=tol, i2_coarse=i2_coarse)
    best = None
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            sse = _truncated_sse(y, full, p, q)
            bic = bic_value(sse, y.size, p, q)
            if best is None or bic < best[0]:
                best = (bic, p, q)
    _, p_best, q_best = best
    refit = fit_sequential_multi(y, p_best, q_best, tol=tol, i2_coarse=i2_coarse)
    return p_best, q_best, refit
