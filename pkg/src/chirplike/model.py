"""Signal model: parameter containers, synthesis, and linear-process noise.

The observation model on unit-spaced times ``t = 1..n`` is a sum of ``p``
sinusoids and ``q`` quadratic-phase ("chirp-like") terms,

    y(t) = sum_j [A_j cos(alpha_j t) + B_j sin(alpha_j t)]
         + sum_k [C_k cos(beta_k t^2) + D_k sin(beta_k t^2)] + X(t),

with X a stationary linear process ``X(t) = sum_j a(j) e(t - j)`` driven by
i.i.d. Gaussian innovations of variance ``sigma2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi

SeedLike = "int | np.random.SeedSequence | np.random.Generator"


def _check_freq(value: float, name: str) -> None:
    if not (0.0 < value < np.pi):
        raise ValueError(f"{name} must lie in the open interval (0, pi), got {value!r}")


@dataclass(frozen=True)
class ChirpLikeParams:
    """One component of each kind: amplitudes (A, B, C, D), frequency ``alpha``
    (radians/sample) and frequency rate ``beta`` (radians/sample^2)."""

    A: float
    B: float
    alpha: float
    C: float
    D: float
    beta: float

    def __post_init__(self) -> None:
        _check_freq(self.alpha, "alpha")
        _check_freq(self.beta, "beta")
        if self.A**2 + self.B**2 + self.C**2 + self.D**2 <= 0.0:
            raise ValueError("at least one amplitude must be nonzero")

    def to_multi(self) -> "MultiParams":
        return MultiParams(
            sinusoids=((self.A, self.B, self.alpha),),
            chirps=((self.C, self.D, self.beta),),
        )


@dataclass(frozen=True)
class MultiParams:
    """``p`` sinusoid triples ``(A_j, B_j, alpha_j)`` and ``q`` chirp triples
    ``(C_k, D_k, beta_k)``, in component order."""

    sinusoids: tuple[tuple[float, float, float], ...] = ()
    chirps: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sinusoids", tuple(tuple(map(float, s)) for s in self.sinusoids))
        object.__setattr__(self, "chirps", tuple(tuple(map(float, c)) for c in self.chirps))
        for j, (_, _, alpha) in enumerate(self.sinusoids, start=1):
            _check_freq(alpha, f"alpha_{j}")
        for k, (_, _, beta) in enumerate(self.chirps, start=1):
            _check_freq(beta, f"beta_{k}")

    @property
    def p(self) -> int:
        return len(self.sinusoids)

    @property
    def q(self) -> int:
        return len(self.chirps)

    def validate_true(self) -> None:
        """Enforce the extra invariants a generating parameter set must satisfy:
        distinct frequencies and strictly decreasing component powers per kind."""
        alphas = [a for (_, _, a) in self.sinusoids]
        betas = [b for (_, _, b) in self.chirps]
        if len(set(alphas)) != len(alphas):
            raise ValueError("sinusoid frequencies must be distinct")
        if len(set(betas)) != len(betas):
            raise ValueError("chirp frequency rates must be distinct")
        sin_powers = [a * a + b * b for (a, b, _) in self.sinusoids]
        chirp_powers = [c * c + d * d for (c, d, _) in self.chirps]
        for name, powers in (("sinusoid", sin_powers), ("chirp", chirp_powers)):
            if powers and powers[-1] <= 0.0:
                raise ValueError(f"{name} component powers must be positive")
            if any(hi <= lo for hi, lo in zip(powers, powers[1:])):
                raise ValueError(f"{name} component powers must be strictly decreasing")

    def param_names(self) -> tuple[str, ...]:
        names = []
        for j in range(1, self.p + 1):
            names += [f"A{j}", f"B{j}", f"alpha{j}"]
        for k in range(1, self.q + 1):
            names += [f"C{k}", f"D{k}", f"beta{k}"]
        return tuple(names)

    def flat_values(self) -> np.ndarray:
        vals = [v for triple in self.sinusoids for v in triple]
        vals += [v for triple in self.chirps for v in triple]
        return np.asarray(vals, dtype=float)


@dataclass(frozen=True)
class NoiseSpec:
    """Linear-process noise: coefficients ``a(j)`` keyed by integer lag ``j``,
    plus the innovation variance ``sigma2 >= 0``."""

    coeffs: dict[int, float] = field(default_factory=dict)
    sigma2: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {int(j): float(a) for j, a in self.coeffs.items()})
        if self.sigma2 < 0.0:
            raise ValueError("sigma2 must be nonnegative")
        if self.sigma2 > 0.0 and not any(a != 0.0 for a in self.coeffs.values()):
            raise ValueError("at least one coefficient must be nonzero when sigma2 > 0")

    @classmethod
    def iid(cls, sigma2: float) -> "NoiseSpec":
        """White noise, X(t) = e(t)."""
        return cls(coeffs={0: 1.0}, sigma2=sigma2)

    @classmethod
    def ma1(cls, sigma2: float, rho: float = 0.5) -> "NoiseSpec":
        """First-order moving average, X(t) = e(t) + rho e(t-1)."""
        return cls(coeffs={0: 1.0, 1: rho}, sigma2=sigma2)


def _as_signal(y) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"signal must be one-dimensional, got shape {arr.shape}")
    return arr


def gen_noise(spec: NoiseSpec, n: int, seed: SeedLike = 0) -> np.ndarray:
    """Draw ``X(1..n)`` from the linear process of `spec`.

    Extra innovations are drawn on both sides of ``t = 1..n`` so that every
    X(t) has full support over the coefficient lags (no edge truncation).
    Deterministic given the seed.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if spec.sigma2 == 0.0 or not spec.coeffs:
        return np.zeros(n)
    rng = np.random.default_rng(seed)
    lags = sorted(spec.coeffs)
    lo, hi = min(lags), max(lags)
    # e(t - j) for t in 1..n and j in [lo, hi] spans t' in [1 - hi, n - lo]
    e = rng.normal(0.0, np.sqrt(spec.sigma2), size=n + hi - lo)
    x = np.zeros(n)
    for j in lags:
        a = spec.coeffs[j]
        if a == 0.0:
            continue
        # e index 0 corresponds to time 1 - hi
        start = hi - j
        x += a * e[start : start + n]
    return x


def signal_values(params: MultiParams, n: int) -> np.ndarray:
    """Noise-free signal path on t = 1..n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    t = np.arange(1, n + 1, dtype=float)
    y = np.zeros(n)
    for A, B, alpha in params.sinusoids:
        y += A * np.cos(alpha * t) + B * np.sin(alpha * t)
    t2 = t * t
    for C, D, beta in params.chirps:
        ang = np.mod(beta * t2, TWO_PI)
        y += C * np.cos(ang) + D * np.sin(ang)
    return y


def synthesize(
    params: MultiParams | ChirpLikeParams,
    n: int,
    noise: NoiseSpec | None = None,
    seed: SeedLike = 0,
) -> np.ndarray:
    """Synthesize ``y(1..n)`` under `params`, optionally adding linear-process noise.

    Parameters
    ----------
    params : MultiParams or ChirpLikeParams
        Generating parameters; must satisfy the true-parameter invariants
        (frequencies in (0, pi), distinct, strictly decreasing powers).
    n : int
        Sample count, at least 1.
    noise : NoiseSpec, optional
        Noise model. Omitted or ``sigma2 == 0`` gives a noise-free series.
    seed : int, SeedSequence or Generator
        Innovation stream seed; the output is deterministic given it.
    """
    if isinstance(params, ChirpLikeParams):
        params = params.to_multi()
    params.validate_true()
    y = signal_values(params, n)
    if noise is not None:
        y = y + gen_noise(noise, n, seed)
    return y
