"""Simulation of randomized-basis measurement data.

Each record pairs a basis index nu (drawn uniformly from {1, ..., m^2})
with a real outcome Y whose conditional mean is <rho, E_nu>.  Three noise
models are supported: exact noiseless responses, additive Gaussian noise,
and the binary measurement outcome +/- 1/sqrt(m) for two-point bases
(optionally averaged over K repeated shots of the same observable).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_generator, require_density
from .pauli import MeasurementBasis, fourier_coefficients

PROB_SLACK = 1e-10


@dataclass(frozen=True)
class Noiseless:
    """Exact responses Y = <rho, X>."""

    def label(self) -> str:
        return "noiseless"


@dataclass(frozen=True)
class GaussianNoise:
    """Additive N(0, sigma^2) noise independent of the drawn basis element."""

    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"noise level must be >= 0, got {self.sigma}")

    def label(self) -> str:
        return f"gaussian:{self.sigma!r}"


@dataclass(frozen=True)
class PauliOutcome:
    """Binary measurement outcomes averaged over ``repeats`` shots.

    A single shot takes value +1/sqrt(m) with probability (1 + alpha_nu)/2
    and -1/sqrt(m) otherwise, where alpha_nu is the state's expansion
    coefficient on the drawn element.
    """

    repeats: int = 1

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError(f"repeat count must be >= 1, got {self.repeats}")

    def label(self) -> str:
        return f"pauli:{self.repeats}"


NoiseModel = Noiseless | GaussianNoise | PauliOutcome


def parse_noise_model(text: str) -> NoiseModel:
    """Parse 'noiseless', 'gaussian:<sigma>' or 'pauli:<K>'."""
    parts = text.strip().split(":")
    kind = parts[0].lower()
    if kind == "noiseless" and len(parts) == 1:
        return Noiseless()
    if kind == "gaussian" and len(parts) == 2:
        return GaussianNoise(sigma=float(parts[1]))
    if kind == "pauli" and len(parts) <= 2:
        return PauliOutcome(repeats=int(parts[1]) if len(parts) == 2 else 1)
    raise ValueError(f"unrecognized noise model {text!r}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """n measurement records: 1-based basis indices and real outcomes."""

    basis_indices: np.ndarray
    outcomes: np.ndarray
    model: NoiseModel
    seed: int
    m: int

    def __post_init__(self):
        idx = np.asarray(self.basis_indices, dtype=np.int64)
        out = np.asarray(self.outcomes, dtype=float)
        if idx.ndim != 1 or out.shape != idx.shape or idx.size < 1:
            raise ValueError("basis_indices and outcomes must be equal-length 1-d arrays")
        if idx.min() < 1 or idx.max() > self.m * self.m:
            raise ValueError(f"basis indices must lie in [1, {self.m * self.m}]")
        object.__setattr__(self, "basis_indices", idx)
        object.__setattr__(self, "outcomes", out)

    @property
    def n(self) -> int:
        return self.basis_indices.size


def simulate(rho: np.ndarray, basis: MeasurementBasis, n: int, model: NoiseModel,
             seed: int) -> Dataset:
    """Draw n i.i.d. records under the given noise model, deterministic per seed.

    Basis indices are uniform on {1, ..., m^2}; indices are drawn first,
    then outcome noise, so the stream layout is fixed.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    rho = require_density(rho)
    if rho.shape[0] != basis.m:
        raise ValueError(f"state dimension {rho.shape[0]} does not match basis {basis.m}")
    m = basis.m
    rng = as_generator(seed)
    indices = rng.integers(1, m * m + 1, size=n)
    alphas = fourier_coefficients(rho, basis)
    expectations = alphas / math.sqrt(m)

    if isinstance(model, Noiseless):
        outcomes = expectations[indices - 1]
    elif isinstance(model, GaussianNoise):
        outcomes = expectations[indices - 1] + rng.normal(0.0, model.sigma, size=n)
    elif isinstance(model, PauliOutcome):
        if not basis.two_point:
            raise ValueError(
                "binary-outcome model needs a basis whose elements satisfy E^2 = I/m"
            )
        p_plus = (1.0 + alphas[indices - 1]) / 2.0
        if p_plus.min() < -PROB_SLACK or p_plus.max() > 1.0 + PROB_SLACK:
            raise ValueError(
                f"outcome probability outside [0, 1] (worst {p_plus.min():.3e} / "
                f"{p_plus.max():.3e}); the input state is invalid"
            )
        p_plus = np.clip(p_plus, 0.0, 1.0)
        k = model.repeats
        successes = rng.binomial(k, p_plus)
        outcomes = (2.0 * successes / k - 1.0) / math.sqrt(m)
    else:
        raise TypeError(f"unknown noise model {model!r}")
    return Dataset(basis_indices=indices, outcomes=outcomes, model=model, seed=seed, m=m)


def conditional_variance(rho: np.ndarray, basis: MeasurementBasis, j: int,
                         repeats: int = 1) -> float:
    """Exact variance (1 - alpha_j^2) / (repeats * m) of the averaged outcome.

    ``j`` is the 1-based basis index, matching Dataset.basis_indices.
    """
    if not (1 <= j <= basis.m * basis.m):
        raise ValueError(f"basis index must lie in [1, {basis.m * basis.m}], got {j}")
    if repeats < 1:
        raise ValueError(f"repeat count must be >= 1, got {repeats}")
    alpha = float(fourier_coefficients(rho, basis)[j - 1])
    return (1.0 - alpha * alpha) / (repeats * basis.m)


def noiseless_full_pass(rho: np.ndarray, basis: MeasurementBasis) -> Dataset:
    """Dataset visiting every basis index exactly once with exact outcomes."""
    m = basis.m
    alphas = fourier_coefficients(rho, basis)
    return Dataset(
        basis_indices=np.arange(1, m * m + 1, dtype=np.int64),
        outcomes=alphas / math.sqrt(m),
        model=Noiseless(),
        seed=0,
        m=m,
    )


def write_dataset_csv(dataset: Dataset, path) -> None:
    """Write records as CSV with columns sample_id, basis_index, outcome."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["sample_id", "basis_index", "outcome"])
        for i, (idx, y) in enumerate(zip(dataset.basis_indices, dataset.outcomes)):
            writer.writerow([i, int(idx), repr(float(y))])


def read_dataset_csv(path, m: int, model: NoiseModel | None = None,
                     seed: int = 0) -> Dataset:
    """Read a dataset CSV back; the dimension is supplied by the caller."""
    indices: list[int] = []
    outcomes: list[float] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:3] != ["sample_id", "basis_index", "outcome"]:
            raise ValueError(f"unexpected dataset CSV header {header!r} in {path}")
        for row in reader:
            indices.append(int(row[1]))
            outcomes.append(float(row[2]))
    return Dataset(
        basis_indices=np.array(indices, dtype=np.int64),
        outcomes=np.array(outcomes),
        model=model if model is not None else Noiseless(),
        seed=seed,
        m=m,
    )
