"""Choi-Jamiolkowski bridge between maps and two-qutrit operators.

The Choi matrix of a map L is (I (x) L) applied to the projector onto the
maximally entangled state; L is completely positive exactly when that 9x9
matrix is positive semidefinite.
"""

from __future__ import annotations

import numpy as np

from .linalg import PSD_TOL, hermitian_eigenvalues
from .maps import QutritMap, extend_one_sided
from .spa import SpaParameters, least_choi_eigenvalue, spa_parameters

__all__ = [
    "SpaParameters",
    "choi_of",
    "is_completely_positive",
    "least_choi_eigenvalue",
    "max_entangled_projector",
    "spa_parameters",
]


def max_entangled_projector(d: int = 3) -> np.ndarray:
    """Rank-1 projector onto (1/sqrt(d)) sum_i |ii>."""
    if d < 2:
        raise ValueError(f"subsystem dimension must be >= 2, got {d}")
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / np.sqrt(d)
    return np.outer(vec, vec.conj())


def choi_of(qmap: QutritMap) -> np.ndarray:
    """Choi matrix of a qutrit map: one-sided action on the maximally entangled projector."""
    return extend_one_sided(qmap, max_entangled_projector(3))


def is_completely_positive(qmap: QutritMap) -> tuple[bool, float]:
    """CP verdict via the Choi spectrum; returns (verdict, least eigenvalue)."""
    least = float(hermitian_eigenvalues(choi_of(qmap))[0])
    return least >= -PSD_TOL, least
