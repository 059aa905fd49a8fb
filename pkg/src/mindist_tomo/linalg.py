"""Dense complex Hermitian matrix arithmetic.

Everything here works on plain ``numpy`` arrays: a Hermitian matrix is an
``(m, m)`` complex array equal to its conjugate transpose, and a density
matrix is additionally positive semi-definite with unit trace.  All
functions are pure and safe to call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# eigenvalues smaller than RANK_TOL * max(1, opnorm) count as zero wherever
# rank or support is queried
RANK_TOL = 1e-12


class EigensolverError(RuntimeError):
    """Raised when the iterative eigensolver fails; carries the residual norm."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


def as_generator(seed) -> np.random.Generator:
    """Coerce an integer seed (or existing Generator) into a Philox-backed RNG.

    Philox is counter based, so streams keyed by distinct seeds are
    independent regardless of thread scheduling.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return (a + a*)/2, the exactly-Hermitian part of ``a``."""
    return (a + a.conj().T) / 2


def require_hermitian(a, *, atol: float | None = None, name: str = "matrix") -> np.ndarray:
    """Validate and return ``a`` as a complex Hermitian array.

    ``atol`` defaults to 1e-12 relative to the largest entry magnitude.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    if atol is None:
        atol = 1e-12 * max(1.0, float(np.abs(a).max()))
    dev = float(np.abs(a - a.conj().T).max())
    if dev > atol:
        raise ValueError(f"{name} is not Hermitian: max deviation {dev:.3e} > {atol:.3e}")
    return a


def require_density(rho, *, name: str = "state") -> np.ndarray:
    """Validate that ``rho`` is a density matrix (PSD up to -1e-10, trace 1)."""
    rho = require_hermitian(rho, name=name)
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10:
        raise ValueError(f"{name} has negative eigenvalue {evals.min():.3e}")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"{name} has trace {tr!r}, expected 1")
    return rho


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt inner product tr(a b*) of two Hermitian matrices.

    The imaginary part vanishes for Hermitian inputs; it is asserted small
    and discarded.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # tr(a b*) = sum_ij a_ij conj(b_ij)
    val = complex(np.vdot(b, a))
    scale = max(1.0, abs(val))
    if abs(val.imag) > 1e-12 * scale:
        raise ValueError(f"inner product has non-negligible imaginary part {val.imag:.3e}")
    return val.real


def schatten_norm(a: np.ndarray, p: float) -> float:
    """Schatten p-norm (sum_j |lambda_j|^p)^(1/p); max |lambda| for p=inf.

    For p=2 this equals the entrywise Frobenius norm, which is used as a
    fast path.
    """
    if not (p >= 1.0):
        raise ValueError(f"Schatten order must satisfy p >= 1, got {p}")
    a = require_hermitian(a)
    if p == 2:
        return float(np.linalg.norm(a))
    evals = np.abs(np.linalg.eigvalsh(a))
    if math.isinf(p):
        return float(evals.max())
    if p == 1:
        return float(evals.sum())
    top = float(evals.max())
    if top == 0.0:
        return 0.0
    # factor out the largest magnitude to avoid overflow for large p
    return top * float(np.sum((evals / top) ** p)) ** (1.0 / p)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition with eigenvalues sorted non-increasingly.

    ``eigenvectors`` is unitary with columns matching ``eigenvalues``;
    the source matrix is ``eigenvectors @ diag(eigenvalues) @ eigenvectors*``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def assemble(self, values: np.ndarray | None = None) -> np.ndarray:
        """Rebuild U diag(values) U*, Hermitian by construction."""
        w = self.eigenvalues if values is None else np.asarray(values, dtype=float)
        v = self.eigenvectors
        return hermitize((v * w) @ v.conj().T)


def eigendecompose(a: np.ndarray) -> Spectrum:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending."""
    a = require_hermitian(a)
    try:
        evals, evecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc
    spectrum = Spectrum(eigenvalues=evals[::-1].copy(), eigenvectors=evecs[:, ::-1].copy())
    residual = float(np.linalg.norm(spectrum.assemble() - a))
    tol = 1e-10 * max(1.0, float(np.abs(evals).max()))
    if residual > tol:
        raise EigensolverError(
            f"eigendecomposition residual {residual:.3e} exceeds tolerance {tol:.3e}",
            residual=residual,
        )
    return spectrum


def clip_small_eigenvalues(evals: np.ndarray) -> np.ndarray:
    """Zero out eigenvalues below the rank tolerance (relative to the largest)."""
    evals = np.asarray(evals, dtype=float)
    threshold = RANK_TOL * max(1.0, float(np.abs(evals).max()) if evals.size else 0.0)
    out = evals.copy()
    out[np.abs(out) < threshold] = 0.0
    return out


def matrix_function(a: np.ndarray, f) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    Eigenvalues below the rank tolerance are treated as exact zeros before
    ``f`` is applied.  If ``f`` is undefined (non-finite) at some
    eigenvalue, a ValueError names it.
    """
    spectrum = eigendecompose(a)
    clipped = clip_small_eigenvalues(spectrum.eigenvalues)
    values = np.empty_like(clipped)
    for i, lam in enumerate(clipped):
        try:
            y = float(f(lam))
        except (ValueError, ZeroDivisionError, OverflowError):
            y = float("nan")
        values[i] = y
    if not np.all(np.isfinite(values)):
        bad = clipped[~np.isfinite(values)][0]
        raise ValueError(f"matrix function undefined at eigenvalue {bad!r}")
    return spectrum.assemble(values)


def random_hermitian(m: int, seed, scale: float = 1.0) -> np.ndarray:
    """Random Hermitian matrix with i.i.d. complex Gaussian entrywise noise."""
    rng = as_generator(seed)
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return hermitize(scale * g / math.sqrt(2.0))


def random_unitary(m: int, seed) -> np.ndarray:
    """Haar-distributed m x m unitary matrix (QR of a complex Ginibre matrix)."""
    rng = as_generator(seed)
    g = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_low_rank_density(m: int, r: int, seed) -> np.ndarray:
    """Random rank-<=r density matrix, unitarily invariant on its support.

    The support frame is the orthonormalization of an m x r complex Ginibre
    matrix (Haar frame) and the nonzero eigenvalues are uniform on the
    (r-1)-simplex.  Deterministic per seed.
    """
    if r < 1 or r > m:
        raise ValueError(f"rank must satisfy 1 <= r <= m, got r={r}, m={m}")
    rng = as_generator(seed)
    g = (rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))) / math.sqrt(2.0)
    q, rr = np.linalg.qr(g)
    d = np.diagonal(rr)
    q = q * (d / np.abs(d))
    weights = rng.dirichlet(np.ones(r))
    return hermitize((q * weights) @ q.conj().T)


def random_density(m: int, seed) -> np.ndarray:
    """Random full-rank density matrix (rank-m case of the low-rank sampler)."""
    return random_low_rank_density(m, m, seed)
