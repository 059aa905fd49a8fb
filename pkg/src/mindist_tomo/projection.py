"""Exact Euclidean projection onto the probability simplex and, through the
eigenvalue reduction, onto the set of density matrices and its smoothed
variants.

The simplex routine is the classical pivot algorithm: sort the input
non-increasingly, locate the largest prefix whose mean stays within 1/j of
its last element, and shift that prefix so the result sums to one.  The
matrix projections diagonalize, project the spectrum, and reassemble with
the same eigenvectors, which is exact for the Frobenius geometry and, as a
bonus, optimal in operator norm as well.
"""

from __future__ import annotations

import numpy as np

from .linalg import eigendecompose, hermitize, require_hermitian


def project_simplex(z) -> np.ndarray:
    """Euclidean projection of a real vector onto the probability simplex.

    Returns the unique minimizer of |z - u|_2 over u >= 0 with sum(u) = 1.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or z.size < 1:
        raise ValueError(f"expected a non-empty 1-d vector, got shape {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValueError("input vector contains NaN or Inf")
    m = z.size
    order = np.argsort(-z, kind="stable")
    zs = z[order]
    j = np.arange(1, m + 1)
    prefix_mean = np.cumsum(zs) / j
    # pivot: largest j with prefix_mean_j <= zs_j + 1/j (j=1 always qualifies)
    k = int(np.nonzero(prefix_mean <= zs + 1.0 / j)[0][-1]) + 1
    shift = prefix_mean[k - 1] - 1.0 / k
    lam_sorted = np.where(j <= k, np.maximum(zs - shift, 0.0), 0.0)
    out = np.empty(m)
    out[order] = lam_sorted
    return out


def project_density(z: np.ndarray) -> np.ndarray:
    """Closest density matrix to a Hermitian matrix in Frobenius distance.

    Diagonalizes ``z``, projects the eigenvalue vector onto the simplex and
    reassembles with the original eigenvectors.
    """
    z = require_hermitian(z)
    spectrum = eigendecompose(z)
    lam = project_simplex(spectrum.eigenvalues)
    return spectrum.assemble(lam)


def project_density_smoothed(z: np.ndarray, delta: float) -> np.ndarray:
    """Projection onto the set of mixtures (1-delta) S + delta I/m.

    Every eigenvalue of the result is at least delta/m.  For delta = 0 this
    reproduces :func:`project_density` exactly.
    """
    if not (0.0 <= delta < 1.0):
        raise ValueError(f"smoothing level must lie in [0, 1), got {delta}")
    if delta == 0.0:
        return project_density(z)
    z = require_hermitian(z)
    m = z.shape[0]
    floor = (delta / (1.0 - delta)) * np.eye(m) / m
    inner = project_density(z / (1.0 - delta) - floor)
    return hermitize((1.0 - delta) * inner + delta * np.eye(m) / m)
