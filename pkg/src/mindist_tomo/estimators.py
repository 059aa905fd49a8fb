"""State estimators for randomized-basis measurement data.

The workhorse is the linear inversion matrix (m^2/n) sum_i Y_i X_i, an
unbiased but generally invalid state estimate.  Projecting it onto the
density-matrix set gives the minimal-distance estimator; projecting onto
the smoothed set of mixtures with the maximally mixed state keeps all
eigenvalues above delta/m (which in particular keeps relative entropy to
the truth finite).  A projected-gradient solver for the constrained least
squares problem is included as the iterative baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermitize
from .pauli import MeasurementBasis
from .projection import project_density, project_density_smoothed
from .simulate import Dataset

DEFAULT_SVT_STEP = 0.5
DEFAULT_SVT_EPS = 1e-8
DEFAULT_SVT_MAX_ITERS = 5000


class SvtDivergenceError(RuntimeError):
    """Raised when the least-squares objective increases at a safe step size."""


@dataclass(frozen=True)
class MinimalDistance:
    """Frobenius projection of the linear inversion estimate onto the states."""

    def label(self) -> str:
        return "mindist"


@dataclass(frozen=True)
class Smoothed:
    """Projection onto the smoothed state set; ``delta=None`` picks the default."""

    delta: float | None = None

    def __post_init__(self):
        if self.delta is not None and not (0.0 <= self.delta < 1.0):
            raise ValueError(f"smoothing level must lie in [0, 1), got {self.delta}")

    def label(self) -> str:
        return "smoothed:auto" if self.delta is None else f"smoothed:{self.delta!r}"


@dataclass(frozen=True)
class SvtLeastSquares:
    """Iterative projected-gradient solver for least squares over the states."""

    step: float = DEFAULT_SVT_STEP
    eps: float = DEFAULT_SVT_EPS
    max_iters: int = DEFAULT_SVT_MAX_ITERS

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.eps <= 0:
            raise ValueError(f"stopping threshold must be > 0, got {self.eps}")
        if self.max_iters < 1:
            raise ValueError(f"iteration cap must be >= 1, got {self.max_iters}")

    def label(self) -> str:
        return "svt"


@dataclass(frozen=True)
class RawUnbiased:
    """The unprojected linear inversion matrix (not a valid state in general)."""

    def label(self) -> str:
        return "raw"


EstimatorSpec = MinimalDistance | Smoothed | SvtLeastSquares | RawUnbiased


def parse_estimator(text: str) -> EstimatorSpec:
    """Parse 'mindist', 'smoothed[:delta|auto]', 'svt' or 'raw'."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    if kind == "mindist" and len(parts) == 1:
        return MinimalDistance()
    if kind == "raw" and len(parts) == 1:
        return RawUnbiased()
    if kind == "svt" and len(parts) == 1:
        return SvtLeastSquares()
    if kind == "smoothed" and len(parts) <= 2:
        if len(parts) == 1 or parts[1] == "auto":
            return Smoothed()
        return Smoothed(delta=float(parts[1]))
    raise ValueError(f"unrecognized estimator {text!r}")


@dataclass(frozen=True, eq=False)
class EstimateResult:
    """An estimated matrix plus solver metadata.

    ``converged`` is always True for the non-iterative estimators; for the
    iterative solver it records whether the stopping threshold was met
    within the iteration cap.  ``delta`` is the smoothing level actually
    used, when applicable.
    """

    matrix: np.ndarray
    converged: bool = True
    iterations: int = 0
    delta: float | None = None


def unbiased_estimate(data: Dataset, basis: MeasurementBasis) -> np.ndarray:
    """Linear inversion estimate (m^2/n) sum_i Y_i X_i.

    Unbiased for the true state under uniform basis sampling, but usually
    neither positive semi-definite nor of unit trace.
    """
    if data.n < 1:
        raise ValueError("dataset is empty")
    m = basis.m
    if data.m != m:
        raise ValueError(f"dataset dimension {data.m} does not match basis {m}")
    weights = np.bincount(data.basis_indices - 1, weights=data.outcomes,
                          minlength=m * m)
    z = np.tensordot(weights, basis.stack, axes=(0, 0)) * (m * m / data.n)
    return hermitize(z)


def least_squares_objective(state: np.ndarray, data: Dataset,
                            basis: MeasurementBasis) -> float:
    """Empirical least-squares objective (1/n) sum_i (Y_i - <state, X_i>)^2."""
    coeffs = basis.inner_products(state)
    residuals = data.outcomes - coeffs[data.basis_indices - 1]
    return float(residuals @ residuals) / data.n


def default_smoothing(u: float, m: int, n: int, noise_sigma: float | None = None) -> float:
    """Default smoothing level u * m^(3/2) * sqrt(log(2m) / n), capped at 1.

    ``u`` is the largest operator norm among the basis elements (1/sqrt(m)
    for the tensorized two-level basis).  For Gaussian-noise data with known
    standard deviation, pass ``noise_sigma``: the scale becomes
    max(noise_sigma, u/sqrt(m)) in place of ``u``.
    """
    if u <= 0 or m < 1 or n < 1:
        raise ValueError(f"invalid arguments u={u}, m={m}, n={n}")
    scale = u if noise_sigma is None else max(noise_sigma, u / math.sqrt(m))
    return min(scale * m**1.5 * math.sqrt(math.log(2 * m)) / math.sqrt(n), 1.0)


def svt_least_squares(data: Dataset, basis: MeasurementBasis,
                      step: float = DEFAULT_SVT_STEP, eps: float = DEFAULT_SVT_EPS,
                      max_iters: int = DEFAULT_SVT_MAX_ITERS,
                      z0: np.ndarray | None = None) -> EstimateResult:
    """Projected-gradient least squares over the density-matrix set.

    Alternates S_k = project(Z_{k-1}) with the gradient update
    Z_k = S_k + step * (Zhat - (m^2/n) sum_i <S_k, X_i> X_i), starting from
    Z_0 = 0 (or ``z0``), and stops once consecutive projected iterates are
    within ``eps`` in Frobenius norm.  At step sizes up to the default the
    objective must be non-increasing; a rise aborts with diagnostics.
    """
    m = basis.m
    zhat = unbiased_estimate(data, basis)
    counts = np.bincount(data.basis_indices - 1, minlength=m * m)
    weights = counts * (m * m / data.n)
    z = np.zeros((m, m), dtype=complex) if z0 is None else np.asarray(z0, dtype=complex)
    s_prev = None
    f_prev = None
    for it in range(1, max_iters + 1):
        s = project_density(z)
        if s_prev is not None and float(np.linalg.norm(s - s_prev)) <= eps:
            return EstimateResult(matrix=s, converged=True, iterations=it)
        coeffs = basis.inner_products(s)
        residuals = data.outcomes - coeffs[data.basis_indices - 1]
        f = float(residuals @ residuals) / data.n
        if (f_prev is not None and step <= DEFAULT_SVT_STEP
                and f > f_prev + 1e-9 * max(1.0, abs(f_prev))):
            raise SvtDivergenceError(
                f"objective rose from {f_prev!r} to {f!r} at iteration {it} "
                f"with step {step}"
            )
        gradient_pull = np.tensordot(weights * coeffs, basis.stack, axes=(0, 0))
        z = s + step * (zhat - hermitize(gradient_pull))
        s_prev, f_prev = s, f
    return EstimateResult(matrix=s_prev if s_prev is not None else project_density(z),
                          converged=False, iterations=max_iters)


def estimate(data: Dataset, basis: MeasurementBasis, spec: EstimatorSpec) -> EstimateResult:
    """Run the estimator described by ``spec`` on one dataset."""
    if isinstance(spec, RawUnbiased):
        return EstimateResult(matrix=unbiased_estimate(data, basis))
    if isinstance(spec, MinimalDistance):
        return EstimateResult(matrix=project_density(unbiased_estimate(data, basis)))
    if isinstance(spec, Smoothed):
        delta = spec.delta
        if delta is None:
            delta = default_smoothing(basis.sup_norm_bound, basis.m, data.n)
            if delta >= 1.0:
                raise ValueError(
                    f"default smoothing level saturates at 1 for m={basis.m}, "
                    f"n={data.n}; pass an explicit level below 1"
                )
        matrix = project_density_smoothed(unbiased_estimate(data, basis), delta)
        return EstimateResult(matrix=matrix, delta=delta)
    if isinstance(spec, SvtLeastSquares):
        return svt_least_squares(data, basis, step=spec.step, eps=spec.eps,
                                 max_iters=spec.max_iters)
    raise TypeError(f"unknown estimator spec {spec!r}")
