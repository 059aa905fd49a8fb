"""JSON interchange format for Hermitian matrices.

A matrix is stored as ``{"m": int, "re": [[...]], "im": [[...]]}`` with
full double precision.  The reader validates Hermitian symmetry and rejects
files whose symmetry violation exceeds 1e-9.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .linalg import hermitize

SYMMETRY_TOL = 1e-9


def matrix_to_obj(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    return {
        "m": int(a.shape[0]),
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_obj(obj: dict) -> np.ndarray:
    try:
        m = int(obj["m"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (m, m) or im.shape != (m, m):
        raise ValueError(
            f"matrix object shape mismatch: m={m}, re {re.shape}, im {im.shape}"
        )
    a = re + 1j * im
    dev = float(np.abs(a - a.conj().T).max())
    if dev > SYMMETRY_TOL:
        raise ValueError(f"matrix is not Hermitian: max deviation {dev:.3e} > {SYMMETRY_TOL}")
    return hermitize(a)


def write_matrix(path, a: np.ndarray) -> None:
    """Write one matrix to ``path`` in the JSON interchange format."""
    Path(path).write_text(json.dumps(matrix_to_obj(a)) + "\n", encoding="utf-8")


def read_matrix(path) -> np.ndarray:
    """Read one matrix from ``path``, validating Hermitian symmetry."""
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(obj, dict):
        raise ValueError("expected a single JSON matrix object")
    return matrix_from_obj(obj)
