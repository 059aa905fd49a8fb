"""Low-rank quantum state estimation from randomized basis measurements.

The central object is the minimal-distance estimator: project the unbiased
linear inversion of randomized basis measurements onto the set of density
matrices.  The package provides the exact projection (simplex pivot plus
eigenvalue reduction), its smoothed variant with an eigenvalue floor, an
iterative constrained least-squares baseline, measurement simulation under
Gaussian and binary-outcome noise, the full set of state distances, and a
seeded benchmark harness.
"""

from .bench import (
    ConfigError,
    ExperimentConfig,
    SummaryRow,
    config_from_obj,
    fit_loglog_slope,
    run_sweep,
    write_summary_csv,
)
from .estimators import (
    EstimateResult,
    MinimalDistance,
    RawUnbiased,
    Smoothed,
    SvtLeastSquares,
    default_smoothing,
    estimate,
    least_squares_objective,
    parse_estimator,
    svt_least_squares,
    unbiased_estimate,
)
from .linalg import (
    Spectrum,
    eigendecompose,
    hermitize,
    hs_inner,
    matrix_function,
    random_density,
    random_hermitian,
    random_low_rank_density,
    random_unitary,
    schatten_norm,
)
from .matjson import read_matrix, write_matrix
from .metrics import DistanceReport, bures_sq, distance_report, fidelity, kl_divergence
from .pauli import (
    BasisElement,
    MeasurementBasis,
    basis_from_json,
    basis_to_json,
    build_pauli_basis,
    fourier_coefficients,
)
from .projection import project_density, project_density_smoothed, project_simplex
from .simulate import (
    Dataset,
    GaussianNoise,
    Noiseless,
    PauliOutcome,
    conditional_variance,
    noiseless_full_pass,
    parse_noise_model,
    read_dataset_csv,
    simulate,
    write_dataset_csv,
)

__all__ = [
    "BasisElement",
    "ConfigError",
    "Dataset",
    "DistanceReport",
    "EstimateResult",
    "ExperimentConfig",
    "GaussianNoise",
    "MeasurementBasis",
    "MinimalDistance",
    "Noiseless",
    "PauliOutcome",
    "RawUnbiased",
    "Smoothed",
    "Spectrum",
    "SummaryRow",
    "SvtLeastSquares",
    "basis_from_json",
    "basis_to_json",
    "build_pauli_basis",
    "bures_sq",
    "conditional_variance",
    "config_from_obj",
    "default_smoothing",
    "distance_report",
    "eigendecompose",
    "estimate",
    "fidelity",
    "fit_loglog_slope",
    "fourier_coefficients",
    "hermitize",
    "hs_inner",
    "kl_divergence",
    "least_squares_objective",
    "matrix_function",
    "noiseless_full_pass",
    "parse_estimator",
    "parse_noise_model",
    "project_density",
    "project_density_smoothed",
    "project_simplex",
    "random_density",
    "random_hermitian",
    "random_low_rank_density",
    "random_unitary",
    "read_dataset_csv",
    "read_matrix",
    "run_sweep",
    "schatten_norm",
    "simulate",
    "svt_least_squares",
    "unbiased_estimate",
    "write_dataset_csv",
    "write_matrix",
    "write_summary_csv",
]

__version__ = "0.1.0"
