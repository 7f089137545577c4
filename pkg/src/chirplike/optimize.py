"""Periodogram initializers on their natural grids and scalar/2-D refinement.

The linear-phase periodogram I1 is scanned on the Fourier grid ``pi j / n``
(j = 1..n-1) and its quadratic-phase analogue I2 on the denser grid
``pi k / n^2`` (k = 1..n^2-1). A grid argmax localizes each nonlinear
parameter to one grid step; Brent refinement within that step finishes the
job. Grid scans dominate the runtime and are delegated to the kernels
module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar as _scipy_minimize_scalar

from . import _kernels
from .model import _as_signal

DEFAULT_TOL = 1e-9
DEFAULT_BUDGET = 200


class NonConvergenceError(RuntimeError):
    """Optimizer exhausted its evaluation budget."""


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("bracket requires lo < hi")
        if not self.tol > 0.0:
            raise ValueError("bracket tolerance must be positive")


def _periodogram(y: np.ndarray, freqs, phase: np.ndarray):
    f = np.asarray(freqs, dtype=float)
    flat = np.atleast_1d(f).ravel()
    out = np.empty(flat.size)
    block = max(1, (1 << 22) // max(phase.size, 1))  # bound the angle matrix
    for s in range(0, flat.size, block):
        ang = np.mod(np.multiply.outer(flat[s : s + block], phase), 2.0 * np.pi)
        c = np.cos(ang) @ y
        si = np.sin(ang) @ y
        out[s : s + ang.shape[0]] = (c * c + si * si) / y.size
    return float(out[0]) if f.ndim == 0 else out.reshape(f.shape)


def periodogram_I1(y, alpha):
    """(1/n) [ (sum_t y(t) cos(alpha t))^2 + (sum_t y(t) sin(alpha t))^2 ].

    `alpha` may be a scalar or an array; the result matches its shape.
    """
    y = _as_signal(y)
    t = np.arange(1, y.size + 1, dtype=float)
    return _periodogram(y, alpha, t)


def periodogram_I2(y, beta):
    """Quadratic-phase analogue of `periodogram_I1`, with phase ``beta t^2``."""
    y = _as_signal(y)
    t2 = np.arange(1, y.size + 1, dtype=float) ** 2
    return _periodogram(y, beta, t2)


def fourier_grid(n: int) -> np.ndarray:
    """Fourier frequencies pi j / n, j = 1..n-1."""
    return np.pi * np.arange(1, n) / n


def argmax_I1_grid(y) -> float:
    """Fourier-grid frequency maximizing I1; ties break toward the smaller one."""
    y = _as_signal(y)
    n = y.size
    if n < 2:
        raise ValueError("n must be at least 2")
    vals = _kernels.i1_scan(y, 1, n)
    return np.pi * (1 + int(np.argmax(vals))) / n


def argmax_I2_grid(y, coarse: int | None = None) -> float:
    """Grid frequency rate maximizing I2 over pi k / n^2, k = 1..n^2-1.

    The default scans the full grid. ``coarse`` opts into a stride-then-refine
    scan: every ``coarse``-th point first, then all points within two strides
    of the best one. The coarse mode trades certainty for speed; the I2 main
    lobe is about one grid step wide, so it can lock onto a sidelobe when the
    stride is large relative to the peak height.
    """
    y = _as_signal(y)
    n = y.size
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n * n
    if coarse is None or coarse <= 1:
        vals = _kernels.i2_scan(y, m, 1, m)
        return np.pi * (1 + int(np.argmax(vals))) / m
    stride = int(coarse)
    vals = _kernels.i2_scan(y, m, 1, m, stride)
    k0 = 1 + int(np.argmax(vals)) * stride
    lo = max(1, k0 - 2 * stride)
    hi = min(m, k0 + 2 * stride + 1)
    fine = _kernels.i2_scan(y, m, lo, hi)
    return np.pi * (lo + int(np.argmax(fine))) / m


def minimize_scalar(
    f: Callable[[float], float],
    bracket: Bracket,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """Bounded Brent minimization of `f` on the bracket.

    Returns a point within the bracket whose argument error against the local
    minimizer is at most ``bracket.tol``; raises NonConvergenceError when the
    evaluation budget is exhausted. When the minimum sits at an endpoint the
    endpoint itself is returned.

    The solve runs on the bracket rescaled to [0, 1]: the solver's internal
    sqrt(eps)*|x| resolution floor then scales with the bracket width instead
    of the argument magnitude, which matters for the very tight frequency-rate
    brackets.
    """
    width = bracket.hi - bracket.lo
    res = _scipy_minimize_scalar(
        lambda u: f(bracket.lo + u * width),
        bounds=(0.0, 1.0),
        method="bounded",
        options={"xatol": bracket.tol / width, "maxiter": budget},
    )
    if not res.success:
        raise NonConvergenceError(f"scalar minimization did not converge: {res.message}")
    x = float(np.clip(bracket.lo + res.x * width, bracket.lo, bracket.hi))
    # the interior estimate can sit above an endpoint value when the true
    # minimum is on the boundary; keep whichever of the three is lowest
    candidates = [(float(f(bracket.lo)), bracket.lo), (float(f(bracket.hi)), bracket.hi), (float(res.fun), x)]
    return min(candidates, key=lambda fx: fx[0])[1]


def minimize_2d(
    f: Callable[[float, float], float],
    start: tuple[float, float],
    box: tuple[tuple[float, float], tuple[float, float]],
    tol: float = DEFAULT_TOL,
    max_sweeps: int = 60,
    budget: int = DEFAULT_BUDGET,
) -> tuple[float, float]:
    """Coordinate descent over a box, alternating 1-D Brent solves.

    Sweeps alternate the two coordinates until the joint movement of one full
    sweep drops below `tol`; the iterate never leaves the box. Raises
    NonConvergenceError after `max_sweeps` sweeps.
    """
    (alo, ahi), (blo, bhi) = box
    a, b = float(start[0]), float(start[1])
    if not (alo <= a <= ahi and blo <= b <= bhi):
        raise ValueError("start must lie inside the box")
    scalar_tol = tol / 8.0
    for _ in range(max_sweeps):
        a_new = minimize_scalar(lambda x: f(x, b), Bracket(alo, ahi, scalar_tol), budget)
        b_new = minimize_scalar(lambda x: f(a_new, x), Bracket(blo, bhi, scalar_tol), budget)
        moved = max(abs(a_new - a), abs(b_new - b))
        a, b = a_new, b_new
        if moved < tol:
            return a, b
    raise NonConvergenceError(f"coordinate descent still moving after {max_sweeps} sweeps")
