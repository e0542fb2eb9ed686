"""Gell-Mann operator basis for qutrits and decompositions over it.

The basis is the 3x3 identity followed by the eight standard Gell-Mann
matrices; all nine are Hermitian and pairwise Hilbert-Schmidt orthogonal,
with Tr(G1^2) = 3 and Tr(Gi^2) = 2 for i >= 2.  Tensor products Gi (x) Gj
form an orthogonal basis of 9x9 operators, which is how the entanglement
witness gets its local-observable decomposition.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .linalg import as_complex_matrix, kron


def _g() -> tuple[np.ndarray, ...]:
    i = 1j
    g1 = np.eye(3, dtype=complex)
    g2 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
    g3 = np.array([[0, -i, 0], [i, 0, 0], [0, 0, 0]], dtype=complex)
    g4 = np.diag([1.0, -1.0, 0.0]).astype(complex)
    g5 = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex)
    g6 = np.array([[0, 0, -i], [0, 0, 0], [i, 0, 0]], dtype=complex)
    g7 = np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
    g8 = np.array([[0, 0, 0], [0, 0, -i], [0, i, 0]], dtype=complex)
    g9 = np.diag([1.0, 1.0, -2.0]).astype(complex) / np.sqrt(3.0)
    return (g1, g2, g3, g4, g5, g6, g7, g8, g9)


class GellMannBasis(NamedTuple):
    matrices: tuple[np.ndarray, ...]
    norms: tuple[float, ...]  # Tr(Gi^2)


def gellmann_basis() -> GellMannBasis:
    """The ordered basis G1..G9 (identity first) with squared HS norms."""
    mats = _g()
    return GellMannBasis(mats, tuple(float(np.trace(g @ g).real) for g in mats))


def decompose_in_gellmann(w) -> np.ndarray:
    """Coefficients c[i, j] with w = sum_ij c[i, j] Gi (x) Gj.

    Projection: c_ij = <Gi (x) Gj, w> / (Tr Gi^2 * Tr Gj^2).  Raises if any
    coefficient picks up an imaginary part above 1e-12 (non-Hermitian input).
    """
    m = as_complex_matrix(w)
    if m.shape != (9, 9):
        raise ValueError(f"expected a 9x9 operator, got {m.shape}")
    mats, norms = gellmann_basis()
    coeffs = np.empty((9, 9))
    for i, gi in enumerate(mats):
        for j, gj in enumerate(mats):
            c = np.trace(kron(gi, gj).conj().T @ m) / (norms[i] * norms[j])
            if abs(c.imag) > 1e-12:
                raise ValueError(
                    f"coefficient ({i + 1},{j + 1}) has imaginary part {c.imag:.3e}"
                )
            coeffs[i, j] = c.real
    return coeffs


def gellmann_reconstruct(coeffs) -> np.ndarray:
    """Rebuild sum_ij c[i, j] Gi (x) Gj from a coefficient table."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (9, 9):
        raise ValueError(f"expected a 9x9 coefficient table, got {c.shape}")
    mats, _ = gellmann_basis()
    out = np.zeros((9, 9), dtype=complex)
    for i, gi in enumerate(mats):
        for j, gj in enumerate(mats):
            if c[i, j] != 0.0:
                out += c[i, j] * kron(gi, gj)
    return out
