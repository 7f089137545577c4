"""Replicated simulation experiments and trigonometric-sum limit checks.

An experiment draws `replicates` independent noisy signals from one true
parameter set, fits each with the configured estimator, and aggregates
per-parameter average, bias, empirical variance, and MSE next to the
closed-form asymptotic variances. Replicate seeds are derived from the base
seed by counter, so results are independent of execution order and worker
count.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import estimators
from .asymptotics import asym_variances, c_constant
from .designmat import DegenerateDesignError
from .model import MultiParams, NoiseSpec, synthesize
from .optimize import NonConvergenceError

THREADS_ENV = "CHIRPLIKE_THREADS"

_METHODS = ("joint", "sequential")


@dataclass(frozen=True)
class ExperimentConfig:
    truth: MultiParams
    n: int
    noise: NoiseSpec
    replicates: int = 500
    method: str = "sequential"
    base_seed: int = 0
    keep_estimates: bool = False
    i2_coarse: int | None = None

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}")
        if self.method == "joint" and (self.truth.p, self.truth.q) != (1, 1):
            raise ValueError("the joint estimator handles exactly one component of each kind")
        self.truth.validate_true()

    def to_dict(self) -> dict:
        return {
            "truth": {
                "sinusoids": [list(s) for s in self.truth.sinusoids],
                "chirps": [list(c) for c in self.truth.chirps],
            },
            "n": self.n,
            "noise": {
                "coeffs": {str(j): a for j, a in sorted(self.noise.coeffs.items())},
                "sigma2": self.noise.sigma2,
            },
            "replicates": self.replicates,
            "method": self.method,
            "base_seed": self.base_seed,
            "keep_estimates": self.keep_estimates,
            "i2_coarse": self.i2_coarse,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        truth = MultiParams(
            sinusoids=tuple(tuple(s) for s in data["truth"].get("sinusoids", ())),
            chirps=tuple(tuple(c) for c in data["truth"].get("chirps", ())),
        )
        noise = NoiseSpec(
            coeffs={int(j): float(a) for j, a in data["noise"]["coeffs"].items()},
            sigma2=float(data["noise"]["sigma2"]),
        )
        return cls(
            truth=truth,
            n=int(data["n"]),
            noise=noise,
            replicates=int(data.get("replicates", 500)),
            method=str(data.get("method", "sequential")),
            base_seed=int(data.get("base_seed", 0)),
            keep_estimates=bool(data.get("keep_estimates", False)),
            i2_coarse=(None if data.get("i2_coarse") is None else int(data["i2_coarse"])),
        )


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    param_names: tuple[str, ...]
    truth_values: np.ndarray
    average: np.ndarray
    bias: np.ndarray
    variance: np.ndarray
    mse: np.ndarray
    asym_var: np.ndarray
    failures: int
    runtime: float = 0.0
    estimates: np.ndarray | None = None

    def to_dict(self) -> dict:
        # volatile fields (runtime) belong to the run manifest, not the report
        out = {
            "config": self.config.to_dict(),
            "param_names": list(self.param_names),
            "truth_values": self.truth_values.tolist(),
            "average": self.average.tolist(),
            "bias": self.bias.tolist(),
            "variance": self.variance.tolist(),
            "mse": self.mse.tolist(),
            "asym_var": self.asym_var.tolist(),
            "failures": self.failures,
        }
        if self.estimates is not None:
            out["estimates"] = self.estimates.tolist()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentReport":
        return cls(
            config=ExperimentConfig.from_dict(data["config"]),
            param_names=tuple(data["param_names"]),
            truth_values=np.asarray(data["truth_values"], dtype=float),
            average=np.asarray(data["average"], dtype=float),
            bias=np.asarray(data["bias"], dtype=float),
            variance=np.asarray(data["variance"], dtype=float),
            mse=np.asarray(data["mse"], dtype=float),
            asym_var=np.asarray(data["asym_var"], dtype=float),
            failures=int(data["failures"]),
            estimates=(
                np.asarray(data["estimates"], dtype=float) if "estimates" in data else None
            ),
        )

    def table_rows(self) -> list[tuple[str, str, float]]:
        """(statistic, parameter, value) rows in table order."""
        rows = []
        for stat, vec in (
            ("average", self.average),
            ("bias", self.bias),
            ("variance", self.variance),
            ("mse", self.mse),
            ("asym_var", self.asym_var),
        ):
            for name, value in zip(self.param_names, vec):
                rows.append((stat, name, float(value)))
        return rows


def replicate_seed(base_seed: int, r: int) -> np.random.SeedSequence:
    """Counter-derived seed of replicate `r`; independent of execution order."""
    return np.random.SeedSequence(base_seed, spawn_key=(r,))


def resolve_threads(requested: int | None = None, replicates: int | None = None) -> int:
    """Worker count: requested (or cpu count), capped by the CHIRPLIKE_THREADS env var."""
    wanted = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV, "").strip()
    if cap:
        wanted = min(wanted, max(1, int(cap)))
    if replicates is not None:
        wanted = min(wanted, replicates)
    return max(1, wanted)


def _fit_once(config: ExperimentConfig, r: int) -> np.ndarray | None:
    y = synthesize(config.truth, config.n, config.noise, seed=replicate_seed(config.base_seed, r))
    try:
        if config.method == "joint":
            fit = estimators.fit_joint_one(y, i2_coarse=config.i2_coarse)
        else:
            fit = estimators.fit_sequential_multi(
                y, config.truth.p, config.truth.q, i2_coarse=config.i2_coarse
            )
    except (DegenerateDesignError, NonConvergenceError):
        return None
    return fit.params.flat_values()


def run_experiment(config: ExperimentConfig, threads: int | None = None) -> ExperimentReport:
    """Run the replicated experiment and aggregate estimator statistics.

    Failed replicates (degenerate design or optimizer non-convergence) are
    skipped and counted; statistics cover the successful ones. Sequential
    extraction follows the power ordering of the true components, so estimate
    rows align with the truth component-by-component.
    """
    start = time.perf_counter()
    names = config.truth.param_names()
    truth_vec = config.truth.flat_values()
    rows: list[np.ndarray | None] = [None] * config.replicates
    workers = resolve_threads(threads, config.replicates)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for r, row in enumerate(pool.map(lambda r: _fit_once(config, r), range(config.replicates))):
                rows[r] = row
    else:
        for r in range(config.replicates):
            rows[r] = _fit_once(config, r)
    kept = [row for row in rows if row is not None]
    failures = config.replicates - len(kept)
    if not kept:
        raise RuntimeError("every replicate failed to fit")
    estimates = np.vstack(kept)
    average = estimates.mean(axis=0)
    bias = average - truth_vec
    variance = estimates.var(axis=0)  # population variance keeps MSE >= variance exact
    mse = np.mean((estimates - truth_vec) ** 2, axis=0)
    asym = asym_variances(config.truth, config.noise.sigma2, c_constant(config.noise), config.n)
    asym_vec = np.array([asym.variances[name] for name in names])
    return ExperimentReport(
        config=config,
        param_names=names,
        truth_values=truth_vec,
        average=average,
        bias=bias,
        variance=variance,
        mse=mse,
        asym_var=asym_vec,
        failures=failures,
        runtime=time.perf_counter() - start,
        estimates=estimates if config.keep_estimates else None,
    )


_SINGLE_KINDS = ("cos2", "sin2", "sincos", "cos", "sin")
_MIXED_KINDS = ("cos_cos", "cos_sin", "sin_cos", "sin_sin")


def empirical_trig_average(k: int, phi, kind: str, quad: str = "t", n: int = 10_000) -> float:
    """Finite-n value of a normalized trigonometric sum, (1/n^(k+1)) sum t^k f(t).

    Single-angle kinds ("cos2", "sin2", "sincos", "cos", "sin") take a scalar
    `phi` and a phase selector `quad`: "t" for phase ``phi t``, "t2" for
    ``phi t^2``. Mixed kinds ("cos_cos", "cos_sin", "sin_cos", "sin_sin")
    take a pair ``phi = (phi1, phi2)`` and pair phase ``phi1 t`` with
    ``phi2 t^2``. Squared kinds approach 1/(2(k+1)) as n grows; every other
    kind approaches 0.
    """
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1, or 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    t = np.arange(1, n + 1, dtype=float)
    weight = t**k if k else np.ones(n)
    if kind in _SINGLE_KINDS:
        phi = float(phi)
        if not (0.0 < phi < np.pi):
            raise ValueError("phi must lie in (0, pi)")
        if quad == "t":
            ang = phi * t
        elif quad == "t2":
            ang = np.mod(phi * t * t, 2.0 * np.pi)
        else:
            raise ValueError("quad must be 't' or 't2'")
        if kind == "cos2":
            vals = np.cos(ang) ** 2
        elif kind == "sin2":
            vals = np.sin(ang) ** 2
        elif kind == "sincos":
            vals = np.sin(ang) * np.cos(ang)
        elif kind == "cos":
            vals = np.cos(ang)
        else:
            vals = np.sin(ang)
    elif kind in _MIXED_KINDS:
        phi1, phi2 = (float(phi[0]), float(phi[1]))
        for v in (phi1, phi2):
            if not (0.0 < v < np.pi):
                raise ValueError("both angles must lie in (0, pi)")
        lin = phi1 * t
        qua = np.mod(phi2 * t * t, 2.0 * np.pi)
        first = np.cos(lin) if kind.startswith("cos") else np.sin(lin)
        second = np.cos(qua) if kind.endswith("cos") else np.sin(qua)
        vals = first * second
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return float(np.sum(weight * vals) / n ** (k + 1))
