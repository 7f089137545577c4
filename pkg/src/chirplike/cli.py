"""Command-line front end: synthesize signals, fit models, run experiments.

Every command writes its primary output plus a ``<output>.manifest.json``
sidecar recording the resolved configuration, seed, library version, and
timestamps. Data outputs themselves carry no volatile fields, so rerunning a
command with the same configuration reproduces them byte-identically.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, estimators
from .asymptotics import asym_variances, c_constant, plug_in_sigma2c
from .designmat import DegenerateDesignError
from .model import MultiParams, NoiseSpec, signal_values, synthesize
from .montecarlo import ExperimentConfig, run_experiment
from .optimize import NonConvergenceError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4


class InputParseError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_manifest(output: Path, command: str, config: dict, seed, started: float) -> None:
    manifest = {
        "command": command,
        "config": config,
        "seed": seed,
        "version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "runtime_seconds": time.perf_counter() - started,
    }
    path = Path(str(output) + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def _write_signal_csv(path: Path, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    rows = zip(*(columns[name] for name in names))
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(",".join(names) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_signal_csv(path: str | Path) -> np.ndarray:
    """Read a signal series: one column (y) or two columns (t, y) with
    t = 1..n contiguous; a non-numeric first line is treated as a header."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                nums = [float(p) for p in parts]
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise InputParseError(f"{path}:{lineno}: not numeric: {line!r}")
            if len(nums) == 1:
                values.append((None, nums[0]))
            elif len(nums) == 2:
                values.append((nums[0], nums[1]))
            else:
                raise InputParseError(f"{path}:{lineno}: expected 1 or 2 columns, got {len(nums)}")
    if not values:
        raise InputParseError(f"{path}: no data rows")
    has_t = values[0][0] is not None
    for i, (t, _) in enumerate(values, start=1):
        if (t is not None) != has_t:
            raise InputParseError(f"{path}: inconsistent column count at data row {i}")
        if has_t and t != i:
            raise InputParseError(f"{path}: time column must run 1..n contiguously (row {i} has t={t:g})")
    return np.array([y for _, y in values])


def _parse_param_list(text: str, p: int, q: int) -> MultiParams:
    raw = text.replace(",", " ").split()
    need = 3 * (p + q)
    if len(raw) != need:
        raise InputParseError(f"--params needs {need} values for p={p}, q={q}, got {len(raw)}")
    try:
        vals = [float(v) for v in raw]
    except ValueError as exc:
        raise InputParseError(f"--params: {exc}")
    sins = tuple(tuple(vals[3 * j : 3 * j + 3]) for j in range(p))
    chirps = tuple(tuple(vals[3 * (p + k) : 3 * (p + k) + 3]) for k in range(q))
    return MultiParams(sinusoids=sins, chirps=chirps)


def _noise_from_flags(noise: str, sigma2: float) -> NoiseSpec | None:
    if sigma2 == 0.0:
        return None
    if noise == "iid":
        return NoiseSpec.iid(sigma2)
    return NoiseSpec.ma1(sigma2)


def _cmd_synth(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    params = _parse_param_list(args.params or "", args.p, args.q)
    noise = _noise_from_flags(args.noise, args.sigma2)
    y = synthesize(params, args.n, noise, seed=args.seed)
    out = Path(args.output)
    _write_signal_csv(out, {"t": np.arange(1, args.n + 1, dtype=float), "y": y})
    _write_manifest(
        out,
        "synth",
        {
            "n": args.n,
            "p": args.p,
            "q": args.q,
            "params": params.flat_values().tolist(),
            "sigma2": args.sigma2,
            "noise": args.noise,
        },
        args.seed,
        started,
    )
    print(f"wrote {args.n} samples to {out}")
    return EXIT_OK


def _fit_report_dict(fit: estimators.FitResult, sigma2c: float | None) -> dict:
    report = {
        "method": fit.method,
        "n": fit.n,
        "p": fit.params.p,
        "q": fit.params.q,
        "estimates": {
            "sinusoids": [list(s) for s in fit.params.sinusoids],
            "chirps": [list(c) for c in fit.params.chirps],
        },
        "sse": fit.sse,
        "bic": fit.bic,
        "trace": [
            {
                "index": rec.index,
                "kind": rec.kind,
                "initializer": rec.initializer,
                "refined": rec.refined,
            }
            for rec in fit.trace
        ],
    }
    if fit.asym_se is not None:
        report["asym_se"] = fit.asym_se
        report["sigma2c"] = sigma2c
    return report


def _cmd_fit(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    y = read_signal_csv(args.input)
    selected = None
    if args.select_order:
        p, q, fit = estimators.select_order_bic(y, args.pmax, args.qmax)
        selected = {"p": p, "q": q, "n_parameters": 3 * (p + q)}
    elif args.method == "joint":
        fit = estimators.fit_joint_one(y)
    else:
        fit = estimators.fit_sequential_multi(y, args.p, args.q)

    if args.sigma2 is not None:
        spec = _noise_from_flags(args.noise, args.sigma2) or NoiseSpec.iid(0.0)
        sigma2c = args.sigma2 * c_constant(spec) if args.sigma2 > 0 else 0.0
    else:
        sigma2c = plug_in_sigma2c(y - signal_values(fit.params, fit.n)) if fit.params.p + fit.params.q else None
    if sigma2c and (fit.params.p + fit.params.q):
        reportvars = asym_variances(fit.params, sigma2=sigma2c, c=1.0, n=fit.n)
        fit.asym_se = reportvars.standard_errors()

    report = _fit_report_dict(fit, sigma2c)
    if selected is not None:
        report["selected_order"] = selected
    out = Path(args.output)
    out.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    fitted_path = out.with_suffix(".fitted.csv") if out.suffix == ".json" else Path(str(out) + ".fitted.csv")
    fitted = signal_values(fit.params, fit.n) if (fit.params.p + fit.params.q) else np.zeros(fit.n)
    _write_signal_csv(
        fitted_path,
        {"t": np.arange(1, fit.n + 1, dtype=float), "y": y, "fitted": fitted},
    )
    _write_manifest(
        out,
        "fit",
        {
            "input": str(args.input),
            "p": args.p,
            "q": args.q,
            "method": args.method,
            "select_order": bool(args.select_order),
            "pmax": args.pmax,
            "qmax": args.qmax,
            "sigma2": args.sigma2,
            "noise": args.noise,
        },
        None,
        started,
    )
    if selected is not None:
        print(f"selected (p, q) = ({selected['p']}, {selected['q']}) with {selected['n_parameters']} parameters")
    print(f"sse = {fit.sse:.6g}, bic = {fit.bic:.6g}; report at {out}, fitted series at {fitted_path}")
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    try:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{args.config}: invalid JSON ({exc})")
    try:
        config = ExperimentConfig.from_dict(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"{args.config}: bad experiment config ({exc})")
    if args.replicates is not None:
        config = ExperimentConfig.from_dict({**config.to_dict(), "replicates": args.replicates})
    if args.seed is not None:
        config = ExperimentConfig.from_dict({**config.to_dict(), "base_seed": args.seed})
    report = run_experiment(config, threads=args.threads)
    out = Path(args.output)
    out.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    table_path = out.with_suffix(".table.csv") if out.suffix == ".json" else Path(str(out) + ".table.csv")
    with open(table_path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("statistic,parameter,value\n")
        for stat, name, value in report.table_rows():
            fh.write(f"{stat},{name},{_fmt(value)}\n")
    _write_manifest(out, "simulate", config.to_dict(), config.base_seed, started)
    print(
        f"{config.replicates} replicates ({report.failures} failed) in {report.runtime:.1f}s; "
        f"report at {out}, table at {table_path}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirplike",
        description="Chirp-like signal model: synthesis, fitting, order selection, simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize a signal to CSV")
    synth.add_argument("--output", required=True, help="output CSV path (t,y)")
    synth.add_argument("--n", type=int, required=True, help="sample count")
    synth.add_argument("--p", type=int, default=0, help="number of sinusoid components")
    synth.add_argument("--q", type=int, default=0, help="number of chirp components")
    synth.add_argument(
        "--params",
        default="",
        help="3(p+q) values: p triples 'A B alpha' then q triples 'C D beta' (comma or space separated)",
    )
    synth.add_argument("--sigma2", type=float, default=0.0, help="innovation variance")
    synth.add_argument("--noise", choices=("iid", "ma1"), default="iid", help="noise model")
    synth.add_argument("--seed", type=int, default=0, help="RNG seed")
    synth.set_defaults(func=_cmd_synth)

    fit = sub.add_parser("fit", help="fit the model to a signal file")
    fit.add_argument("--input", required=True, help="input CSV: y, or t,y with t = 1..n")
    fit.add_argument("--output", required=True, help="output JSON report path")
    fit.add_argument("--p", type=int, default=1, help="number of sinusoid components")
    fit.add_argument("--q", type=int, default=1, help="number of chirp components")
    fit.add_argument("--method", choices=("joint", "sequential"), default="sequential")
    fit.add_argument("--select-order", action="store_true", help="choose (p, q) by BIC")
    fit.add_argument("--pmax", type=int, default=3, help="largest p for --select-order")
    fit.add_argument("--qmax", type=int, default=1, help="largest q for --select-order")
    fit.add_argument(
        "--sigma2",
        type=float,
        default=None,
        help="known innovation variance for standard errors (omit to estimate from residuals)",
    )
    fit.add_argument("--noise", choices=("iid", "ma1"), default="iid", help="noise model for --sigma2")
    fit.set_defaults(func=_cmd_fit)

    sim = sub.add_parser("simulate", help="run a replicated simulation experiment")
    sim.add_argument("--config", required=True, help="experiment config JSON")
    sim.add_argument("--output", required=True, help="output JSON report path")
    sim.add_argument("--replicates", type=int, default=None, help="override config replicates")
    sim.add_argument("--seed", type=int, default=None, help="override config base seed")
    sim.add_argument("--threads", type=int, default=None, help="worker threads (capped by CHIRPLIKE_THREADS)")
    sim.set_defaults(func=_cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DegenerateDesignError, NonConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
