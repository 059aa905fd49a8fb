"""Independent brute-force oracles used to cross-check the fast algorithms.

The simplex oracle enumerates every nonempty support set and solves the
equality-constrained least squares problem on it in closed form, keeping
the feasible candidate with the smallest distance.  It shares no code with
the pivot algorithm under test.
"""

from __future__ import annotations

import numpy as np

FEAS_TOL = 1e-12


def simplex_qp_oracle(z: np.ndarray) -> np.ndarray:
    """Exhaustive active-set projection onto the simplex (m <= ~16)."""
    return simplex_qp_oracle_batch(np.asarray(z, float)[None, :])[0]


def simplex_qp_oracle_batch(zs: np.ndarray) -> np.ndarray:
    """Vectorized oracle over a batch of vectors of common dimension m.

    For support T the constrained minimizer is x_T = z_T + (1 - sum z_T)/|T|
    and 0 elsewhere; it is feasible when min x_T >= 0.  The projection is
    the feasible candidate of minimal distance.
    """
    zs = np.asarray(zs, dtype=float)
    bsz, m = zs.shape
    n_sup = 2**m - 1
    masks = ((np.arange(1, n_sup + 1)[:, None] >> np.arange(m)[None, :]) & 1).astype(float)
    sizes = masks.sum(axis=1)
    sums = zs @ masks.T
    shift = (1.0 - sums) / sizes
    cand = (zs[:, None, :] + shift[:, :, None]) * masks[None, :, :]
    feasible = (cand >= -FEAS_TOL).all(axis=2)
    dist = ((cand - zs[:, None, :]) ** 2).sum(axis=2)
    dist = np.where(feasible, dist, np.inf)
    best = dist.argmin(axis=1)
    return cand[np.arange(bsz), best]


def density_qp_oracle(z: np.ndarray) -> np.ndarray:
    """Eigen-reduced brute-force projection onto the density matrices."""
    z = np.asarray(z, dtype=complex)
    evals, evecs = np.linalg.eigh(z)
    lam = simplex_qp_oracle(evals)
    out = (evecs * lam) @ evecs.conj().T
    return (out + out.conj().T) / 2


def smoothed_qp_oracle(z: np.ndarray, delta: float, grid: int = 2_000_001) -> np.ndarray:
    """Direct 2x2 diagonal-case oracle for the smoothed projection.

    Minimizes |diag(z) - diag(a, 1-a)|^2 over a in [delta/2, 1 - delta/2]
    by scanning a fine grid; only used to pin small hand examples.
    """
    z = np.asarray(z, dtype=float)
    assert z.shape == (2, 2) and abs(z[0, 1]) < 1e-15 and abs(z[1, 0]) < 1e-15
    a = np.linspace(delta / 2, 1 - delta / 2, grid)
    cost = (z[0, 0] - a) ** 2 + (z[1, 1] - (1 - a)) ** 2
    best = float(a[cost.argmin()])
    return np.diag([best, 1 - best])
