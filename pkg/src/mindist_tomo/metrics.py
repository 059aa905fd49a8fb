"""Distances between density matrices.

Covers the Schatten p-norm distances, the Bures (quantum Hellinger)
distance via the fidelity, and quantum relative entropy with the usual
convention that it is infinite when the second state's support does not
contain the first's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermitize, require_density, require_hermitian

# relative entropy support test: eigenvalues of the second state below
# SUPPORT_REL_TOL * lambda_max count as off-support; the first state may put
# at most SUPPORT_MASS_TOL of mass there before the divergence is infinite
SUPPORT_REL_TOL = 1e-10
SUPPORT_MASS_TOL = 1e-9

# eigenvalues of the first state below this contribute 0 to tr(S log S)
ENTROPY_FLOOR = 1e-14


def schatten_from_eigenvalues(evals: np.ndarray, p: float) -> float:
    """Schatten p-norm given the (real) eigenvalues of a Hermitian matrix."""
    if not (p >= 1.0):
        raise ValueError(f"Schatten order must satisfy p >= 1, got {p}")
    a = np.abs(np.asarray(evals, dtype=float))
    if math.isinf(p):
        return float(a.max())
    if p == 1:
        return float(a.sum())
    if p == 2:
        return float(math.sqrt(np.sum(a * a)))
    top = float(a.max())
    if top == 0.0:
        return 0.0
    return top * float(np.sum((a / top) ** p)) ** (1.0 / p)


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh(rho)
    root = np.sqrt(np.clip(evals, 0.0, None))
    return hermitize((evecs * root) @ evecs.conj().T)


def fidelity(s1: np.ndarray, s2: np.ndarray) -> float:
    """Fidelity tr sqrt(sqrt(S1) S2 sqrt(S1)) of two states, in [0, 1]."""
    s1 = require_density(s1)
    s2 = require_density(s2)
    if s1.shape != s2.shape:
        raise ValueError(f"dimension mismatch: {s1.shape} vs {s2.shape}")
    a = _psd_sqrt(s1)
    inner = hermitize(a @ s2 @ a)
    evals = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(min(np.sqrt(evals).sum(), 1.0))


def bures_sq(s1: np.ndarray, s2: np.ndarray) -> float:
    """Squared Bures distance 2 - 2 * fidelity(S1, S2), in [0, 2]."""
    return max(2.0 - 2.0 * fidelity(s1, s2), 0.0)


def kl_divergence(s1: np.ndarray, s2: np.ndarray) -> float:
    """Quantum relative entropy tr(S1 log S1 - S1 log S2), possibly +inf.

    Returns +inf when S1 places more than a sliver of mass outside the
    numerical support of S2.  Natural logarithm; 0 log 0 = 0.
    """
    s1 = require_density(s1)
    s2 = require_density(s2)
    if s1.shape != s2.shape:
        raise ValueError(f"dimension mismatch: {s1.shape} vs {s2.shape}")
    w2, v2 = np.linalg.eigh(s2)
    threshold = SUPPORT_REL_TOL * float(w2[-1])
    low = w2 < threshold
    if low.any():
        v_low = v2[:, low]
        off_support_mass = float(np.real(np.einsum("ji,jk,ki->", v_low.conj(), s1, v_low)))
        if off_support_mass > SUPPORT_MASS_TOL:
            return math.inf
    w1 = np.linalg.eigvalsh(s1)
    w1 = w1[w1 >= ENTROPY_FLOOR]
    entropy_term = float(np.sum(w1 * np.log(w1)))
    v_in = v2[:, ~low]
    w_in = w2[~low]
    diag = np.real(np.einsum("ji,jk,ki->i", v_in.conj(), s1, v_in))
    cross_term = float(np.sum(np.maximum(diag, 0.0) * np.log(w_in)))
    return max(entropy_term - cross_term, 0.0)


@dataclass(frozen=True)
class DistanceReport:
    """All distances between one pair of states.

    ``schatten`` maps each requested order p to the Schatten distance;
    ``kl`` is the relative entropy of the first state from the second and
    may be +inf.
    """

    schatten: dict[float, float]
    bures_sq: float
    fidelity: float
    kl: float


def distance_report(s1: np.ndarray, s2: np.ndarray, p_grid) -> DistanceReport:
    """Evaluate every supported distance between two states at once."""
    s1 = require_density(s1)
    s2 = require_density(s2)
    evals = np.linalg.eigvalsh(require_hermitian(s1 - s2))
    schatten = {float(p): schatten_from_eigenvalues(evals, float(p)) for p in p_grid}
    fid = fidelity(s1, s2)
    return DistanceReport(
        schatten=schatten,
        bures_sq=max(2.0 - 2.0 * fid, 0.0),
        fidelity=fid,
        kl=kl_divergence(s1, s2),
    )
