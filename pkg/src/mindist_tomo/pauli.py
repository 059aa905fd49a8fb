"""Orthonormal measurement bases of the space of m x m Hermitian matrices.

The canonical instance is the tensorized two-level basis: the four
normalized single-qubit matrices sigma_i / sqrt(2) tensored over k qubits,
giving m^2 = 4^k elements of H_m with m = 2^k.  Every element other than
the first has the two-point spectrum {+1/sqrt(m), -1/sqrt(m)}, which makes
binary measurement outcomes straightforward to simulate.  Arbitrary
user-supplied orthonormal bases are also supported (loaded from JSON).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import clip_small_eigenvalues, eigendecompose, hermitize
from .matjson import matrix_from_obj, matrix_to_obj

SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, 1j], [-1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

ORTHONORMALITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class BasisElement:
    """One orthonormal basis element with its spectral data.

    ``two_point`` marks elements satisfying E^2 = I/m, whose eigenprojections
    have the closed form (I +/- sqrt(m) E) / 2; for other elements the
    projections are computed from the spectrum on demand.
    """

    matrix: np.ndarray
    sup_norm: float
    two_point: bool

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenprojections(self) -> tuple[np.ndarray, np.ndarray]:
        """Projections onto the positive and negative eigenspaces."""
        m = self.dim
        if self.two_point:
            eye = np.eye(m)
            scaled = math.sqrt(m) * self.matrix
            return hermitize((eye + scaled) / 2), hermitize((eye - scaled) / 2)
        spectrum = eigendecompose(self.matrix)
        evals = clip_small_eigenvalues(spectrum.eigenvalues)
        v = spectrum.eigenvectors
        pos = v[:, evals > 0]
        neg = v[:, evals < 0]
        return hermitize(pos @ pos.conj().T), hermitize(neg @ neg.conj().T)

    @property
    def proj_plus(self) -> np.ndarray:
        return self.eigenprojections()[0]

    @property
    def proj_minus(self) -> np.ndarray:
        return self.eigenprojections()[1]


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """An orthonormal basis {E_1, ..., E_{m^2}} of the Hermitian matrices.

    ``stack`` holds all elements as one (m^2, m, m) complex array; it is the
    canonical storage and everything downstream (simulation, estimation)
    works off it.  ``sup_norm_bound`` is max_j ||E_j||_inf.
    """

    m: int
    stack: np.ndarray
    sup_norms: np.ndarray
    two_point: bool
    elements: list[BasisElement] = field(init=False)

    def __post_init__(self):
        elems = [
            BasisElement(matrix=self.stack[i], sup_norm=float(self.sup_norms[i]),
                         two_point=self.two_point)
            for i in range(self.stack.shape[0])
        ]
        object.__setattr__(self, "elements", elems)

    @property
    def size(self) -> int:
        return self.stack.shape[0]

    @property
    def sup_norm_bound(self) -> float:
        return float(self.sup_norms.max())

    def inner_products(self, a: np.ndarray) -> np.ndarray:
        """Vector of <a, E_j> for all j (real for Hermitian ``a``)."""
        vals = np.einsum("ij,nij->n", np.asarray(a, dtype=complex), self.stack.conj())
        return vals.real


def build_pauli_basis(k: int) -> MeasurementBasis:
    """Tensorized two-level orthonormal basis for k qubits (m = 2^k).

    Elements are ordered lexicographically in the multi-index
    (i_1, ..., i_k) over {0,1,2,3}^k, so the identity element I_m/sqrt(m)
    comes first.  Memory grows as m^4; desk-scale k (<= 6) is the practical
    range even though k up to 9 is accepted.
    """
    if not (1 <= k <= 9):
        raise ValueError(f"qubit count must satisfy 1 <= k <= 9, got {k}")
    w = np.stack(SIGMA) / math.sqrt(2.0)
    stack = w
    for _ in range(k - 1):
        p, q = stack.shape[0], stack.shape[1]
        stack = np.einsum("aij,bkl->abikjl", stack, w).reshape(4 * p, 2 * q, 2 * q)
    m = 2**k
    sup_norms = np.full(m * m, m ** (-0.5))
    return MeasurementBasis(m=m, stack=stack, sup_norms=sup_norms, two_point=True)


def fourier_coefficients(rho: np.ndarray, basis: MeasurementBasis) -> np.ndarray:
    """Expansion coefficients alpha_j = sqrt(m) <rho, E_j> of a state.

    The state is recovered as sum_j (alpha_j / sqrt(m)) E_j; for the
    tensorized two-level basis alpha_1 = 1 and |alpha_j| <= 1.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (basis.m, basis.m):
        raise ValueError(f"state shape {rho.shape} does not match basis dimension {basis.m}")
    return math.sqrt(basis.m) * basis.inner_products(rho)


def basis_to_json(basis: MeasurementBasis, path) -> None:
    """Dump a basis as a JSON array of matrix objects (diagnostic format)."""
    objs = [matrix_to_obj(basis.stack[i]) for i in range(basis.size)]
    Path(path).write_text(json.dumps(objs) + "\n", encoding="utf-8")


def basis_from_json(path) -> MeasurementBasis:
    """Load a user-supplied orthonormal basis from a JSON array of matrices.

    Validates orthonormality of the whole family (Gram matrix within 1e-8
    of the identity) and rejects otherwise.  Spectral data per element is
    computed on load.
    """
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list) or not raw:
        raise ValueError("expected a non-empty JSON array of matrix objects")
    mats = [matrix_from_obj(obj) for obj in raw]
    m = mats[0].shape[0]
    if any(a.shape != (m, m) for a in mats):
        raise ValueError("all basis elements must share the same dimension")
    if len(mats) != m * m:
        raise ValueError(f"expected m^2 = {m * m} elements for dimension {m}, got {len(mats)}")
    stack = np.stack(mats)
    flat = stack.reshape(m * m, m * m)
    gram = flat @ flat.conj().T
    dev = float(np.abs(gram - np.eye(m * m)).max())
    if dev > ORTHONORMALITY_TOL:
        raise ValueError(
            f"basis is not orthonormal: Gram deviation {dev:.3e} > {ORTHONORMALITY_TOL}"
        )
    abs_evals = np.abs(np.linalg.eigvalsh(stack))
    sup_norms = abs_evals.max(axis=1)
    eye_over_m = np.eye(m) / m
    squares = np.einsum("nij,njk->nik", stack, stack)
    two_point = bool(np.abs(squares - eye_over_m).max() < 1e-10)
    return MeasurementBasis(m=m, stack=stack, sup_norms=sup_norms, two_point=two_point)
