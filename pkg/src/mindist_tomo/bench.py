"""Experiment orchestration: seeded sweeps over (m, r, n, estimator) grids.

Each grid point draws fresh random low-rank states, simulates measurement
data, runs every requested estimator and scores it with every requested
distance.  Per-trial seeds are derived from the master seed and the grid
coordinates, so any single trial is reproducible in isolation and results
do not depend on the number of worker threads.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from itertools import product

import numpy as np

from .estimators import EstimatorSpec, RawUnbiased, estimate, parse_estimator
from .linalg import hermitize, random_low_rank_density
from .metrics import distance_report, schatten_from_eigenvalues
from .pauli import MeasurementBasis, build_pauli_basis
from .simulate import NoiseModel, parse_noise_model, simulate


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one sweep."""

    qubits_grid: tuple[int, ...]
    rank_grid: tuple[int, ...]
    n_grid: tuple[int, ...]
    model: NoiseModel
    estimators: tuple[EstimatorSpec, ...]
    p_grid: tuple[float, ...]
    replications: int
    master_seed: int


@dataclass(frozen=True)
class SummaryRow:
    """One aggregated line of output: a grid point, estimator and metric."""

    model: str
    m: int
    r: int
    n: int
    estimator: str
    metric: str
    mean_error: float
    std_error: float
    replications: int
    elapsed_ms: float
    seed: int
    errors: int


CSV_COLUMNS = tuple(f.name for f in fields(SummaryRow))


def format_p(p: float) -> str:
    if math.isinf(p):
        return "inf"
    if float(p).is_integer():
        return str(int(p))
    return repr(float(p))


def parse_p(text) -> float:
    if isinstance(text, str) and text.strip().lower() == "inf":
        return math.inf
    value = float(text)
    if value < 1:
        raise ConfigError(f"Schatten order must be >= 1 or 'inf', got {text!r}")
    return value


def config_from_obj(obj: dict) -> ExperimentConfig:
    """Build and validate a config from a plain JSON-style dict."""
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    try:
        qubits = tuple(int(x) for x in obj["qubits_grid"])
        ranks = tuple(int(x) for x in obj["rank_grid"])
        ns = tuple(int(x) for x in obj["n_grid"])
        model = parse_noise_model(obj["model"])
        estimators = tuple(parse_estimator(s) for s in obj["estimators"])
        p_grid = tuple(parse_p(x) for x in obj["p_grid"])
        replications = int(obj["replications"])
        master_seed = int(obj["master_seed"])
    except KeyError as exc:
        raise ConfigError(f"missing config field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    config = ExperimentConfig(
        qubits_grid=qubits, rank_grid=ranks, n_grid=ns, model=model,
        estimators=estimators, p_grid=p_grid, replications=replications,
        master_seed=master_seed,
    )
    validate_config(config)
    return config


def validate_config(config: ExperimentConfig) -> list[tuple[int, int, int]]:
    """Check grids and return the valid (k, r, n) points, in grid order.

    Pairs with r > 2^k are dropped; it is an error if nothing remains.
    """
    if not config.qubits_grid or not config.rank_grid or not config.n_grid:
        raise ConfigError("qubits_grid, rank_grid and n_grid must be non-empty")
    if not config.estimators:
        raise ConfigError("estimators must be non-empty")
    if not config.p_grid:
        raise ConfigError("p_grid must be non-empty")
    if any(not (1 <= k <= 9) for k in config.qubits_grid):
        raise ConfigError("qubit counts must lie in [1, 9]")
    if any(r < 1 for r in config.rank_grid):
        raise ConfigError("ranks must be >= 1")
    if any(n < 1 for n in config.n_grid):
        raise ConfigError("sample counts must be >= 1")
    if config.replications < 1:
        raise ConfigError("replications must be >= 1")
    if config.master_seed < 0:
        raise ConfigError("master_seed must be >= 0")
    points = [
        (k, r, n)
        for k, r, n in product(config.qubits_grid, config.rank_grid, config.n_grid)
        if r <= 2**k
    ]
    if not points:
        raise ConfigError("no valid (qubits, rank) pairs: every rank exceeds 2^k")
    return points


def trial_seeds(master_seed: int, k: int, r: int, n: int, est_idx: int,
                rep: int) -> tuple[int, int]:
    """Derive (state_seed, sim_seed) for one trial from its coordinates."""
    ss = np.random.SeedSequence([master_seed, k, r, n, est_idx, rep])
    words = ss.generate_state(2, np.uint64)
    return int(words[0]), int(words[1])


def run_trial(basis: MeasurementBasis, model: NoiseModel, p_grid, spec: EstimatorSpec,
              r: int, n: int, seeds: tuple[int, int]) -> dict[str, float]:
    """One replication: draw a state, simulate, estimate, score."""
    state_seed, sim_seed = seeds
    rho = random_low_rank_density(basis.m, r, state_seed)
    data = simulate(rho, basis, n, model, sim_seed)
    result = estimate(data, basis, spec)
    if isinstance(spec, RawUnbiased):
        evals = np.linalg.eigvalsh(hermitize(rho - result.matrix))
        return {format_p(p): schatten_from_eigenvalues(evals, p) for p in p_grid}
    report = distance_report(rho, result.matrix, p_grid)
    values = {format_p(p): v for p, v in report.schatten.items()}
    values["bures"] = report.bures_sq
    values["kl"] = report.kl
    return values


def metric_labels(p_grid, spec: EstimatorSpec) -> list[str]:
    labels = [format_p(p) for p in p_grid]
    if not isinstance(spec, RawUnbiased):
        labels += ["bures", "kl"]
    return labels


def run_sweep(config: ExperimentConfig, threads: int = 1,
              median: bool = False) -> list[SummaryRow]:
    """Execute the sweep and aggregate one SummaryRow per grid/estimator/metric.

    Failing trials are counted in the ``errors`` column and excluded from
    the aggregates instead of aborting the sweep.  ``median=True`` reports
    medians in place of means.
    """
    points = validate_config(config)
    bases: dict[int, MeasurementBasis] = {}
    for k in sorted({k for k, _, _ in points}):
        bases[k] = build_pauli_basis(k)

    tasks = [
        (gi, ei, rep)
        for gi in range(len(points))
        for ei in range(len(config.estimators))
        for rep in range(config.replications)
    ]

    def run_one(task):
        gi, ei, rep = task
        k, r, n = points[gi]
        spec = config.estimators[ei]
        seeds = trial_seeds(config.master_seed, k, r, n, ei, rep)
        start = time.perf_counter()
        try:
            values = run_trial(bases[k], config.model, config.p_grid, spec, r, n, seeds)
            return values, time.perf_counter() - start
        except Exception as exc:
            return exc, time.perf_counter() - start

    outcomes: dict[tuple[int, int, int], tuple] = {}
    if threads <= 1:
        for task in tasks:
            outcomes[task] = run_one(task)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for task, outcome in zip(tasks, pool.map(run_one, tasks)):
                outcomes[task] = outcome

    center = np.median if median else np.mean
    rows: list[SummaryRow] = []
    for gi, (k, r, n) in enumerate(points):
        m = 2**k
        for ei, spec in enumerate(config.estimators):
            per_rep = [outcomes[(gi, ei, rep)] for rep in range(config.replications)]
            elapsed_ms = 1000.0 * sum(duration for _, duration in per_rep)
            failures = sum(1 for value, _ in per_rep if isinstance(value, Exception))
            for metric in metric_labels(config.p_grid, spec):
                vals = [value[metric] for value, _ in per_rep
                        if not isinstance(value, Exception)]
                if vals:
                    mean_error = float(center(vals))
                    if len(vals) < 2:
                        std_error = 0.0
                    elif all(math.isfinite(v) for v in vals):
                        std_error = float(np.std(vals, ddof=1))
                    else:
                        std_error = math.inf
                else:
                    mean_error = math.nan
                    std_error = math.nan
                rows.append(SummaryRow(
                    model=config.model.label(), m=m, r=r, n=n,
                    estimator=spec.label(), metric=metric,
                    mean_error=mean_error, std_error=std_error,
                    replications=config.replications, elapsed_ms=elapsed_ms,
                    seed=config.master_seed, errors=failures,
                ))
    return rows


def write_summary_csv(rows, path, timing: bool = False) -> None:
    """Write SummaryRows as CSV (UTF-8, LF endings, fixed column order).

    By default the elapsed_ms column is written as 0 so that repeated runs
    of the same config produce byte-identical files; pass ``timing=True``
    to record measured wall times (at the cost of reproducible bytes).
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            elapsed = repr(float(row.elapsed_ms)) if timing else "0"
            writer.writerow([
                row.model, row.m, row.r, row.n, row.estimator, row.metric,
                repr(float(row.mean_error)), repr(float(row.std_error)),
                row.replications, elapsed, row.seed, row.errors,
            ])


def fit_loglog_slope(points) -> tuple[float, float]:
    """Ordinary least squares fit of log y against log x.

    Returns (slope, intercept); needs at least three strictly positive
    points.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log-log fit requires strictly positive coordinates")
    slope, intercept = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope), float(intercept)
