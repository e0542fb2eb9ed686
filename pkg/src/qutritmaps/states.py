"""Concrete two-qutrit states: the maximally entangled projector, the
PPT-entangled family tau_x, and the Choi state of the SPA map.

Every constructor returns a validated ``DensityMatrix``; validation failures
raise ``StateValidationError`` carrying the violated invariant and its
numeric margin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    HERMITICITY_RTOL,
    as_complex_matrix,
    hermitian_eigenvalues,
    matrix_from_json,
    matrix_to_json,
    partial_trace,
)

TRACE_TOL = 1e-12
MIN_EIG_TOL = 1e-10

STATE_FAMILIES = ("tau-x", "spa-choi", "max-entangled")


class StateValidationError(ValueError):
    """A density-matrix invariant failed; carries the invariant name and margin."""

    def __init__(self, invariant: str, margin: float):
        self.invariant = invariant
        self.margin = float(margin)
        super().__init__(f"density matrix invariant violated: {invariant} (margin {margin:.3e})")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace operator with declared subsystem dimensions."""

    matrix: np.ndarray
    dims: tuple[int, ...] = (3, 3)

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if int(np.prod(self.dims)) != m.shape[0]:
            raise StateValidationError("dims product equals matrix dimension", m.shape[0])
        scale = max(np.abs(m).max(), 1.0)
        herm_dev = float(np.abs(m - m.conj().T).max())
        if herm_dev > HERMITICITY_RTOL * scale:
            raise StateValidationError("hermitian within 1e-12", herm_dev)
        trace_dev = abs(complex(np.trace(m)) - 1.0)
        if trace_dev > TRACE_TOL:
            raise StateValidationError("trace equals 1 within 1e-12", trace_dev)
        least = float(hermitian_eigenvalues(m)[0])
        if least < -MIN_EIG_TOL:
            raise StateValidationError("min eigenvalue >= -1e-10", least)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def max_entangled(d: int = 3) -> DensityMatrix:
    """Projector onto the maximally entangled state (1/sqrt(d)) sum_i |ii>."""
    if d < 2:
        raise ValueError(f"maximally entangled state needs d >= 2, got {d}")
    vec = np.zeros(d * d, dtype=complex)
    vec[:: d + 1] = 1.0 / np.sqrt(d)
    return DensityMatrix(np.outer(vec, vec.conj()), dims=(d, d))


def tau_x(x: float) -> DensityMatrix:
    """The PPT two-qutrit family tau_x, x > 0.

    Unit trace with prefactor 1/(3(1 + x + 1/x)); the |00>+|11>+|22>
    coherence block sits on indices {0, 4, 8} and the remaining diagonal
    carries the (x, 1/x) pattern.
    """
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"tau_x requires x > 0, got {x}")
    m = np.zeros((9, 9), dtype=complex)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = 1.0
    m[1, 1] = x
    m[2, 2] = 1.0 / x
    m[3, 3] = 1.0 / x
    m[5, 5] = x
    m[6, 6] = x
    m[7, 7] = 1.0 / x
    m /= 3.0 * (1.0 + x + 1.0 / x)
    return DensityMatrix(m, dims=(3, 3))


def spa_choi_state(alpha: float) -> DensityMatrix:
    """Choi state of the SPA map, transcribed entrywise.

    With s = sqrt(4a^2 + 1) and denominator 6a^2 + 9s - 3 the diagonal is
    (big, small, large, big, large, small, small, large, big) for
    big = 2a^2 + s - 1, small = s - 1, large = s + 1, with couplings -2a on
    the (0,4)/(5,7) pairs and -2a^2 on (0,8).  Equals choi_of(spa map);
    the equality is part of the build's cross-check suite.
    """
    a = float(alpha)
    if not 0.0 < a <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    s = np.sqrt(4.0 * a * a + 1.0)
    den = 6.0 * a * a + 9.0 * s - 3.0
    big = (2.0 * a * a + s - 1.0) / den
    small = (s - 1.0) / den
    large = (s + 1.0) / den
    m = np.zeros((9, 9), dtype=complex)
    for i, v in enumerate((big, small, large, big, large, small, small, large, big)):
        m[i, i] = v
    m[0, 4] = m[4, 0] = -2.0 * a / den
    m[5, 7] = m[7, 5] = -2.0 * a / den
    m[0, 8] = m[8, 0] = -2.0 * a * a / den
    return DensityMatrix(m, dims=(3, 3))


def reduced_pair(rho: DensityMatrix) -> tuple[DensityMatrix, DensityMatrix]:
    """Both reduced density matrices of a bipartite state."""
    if len(rho.dims) != 2:
        raise ValueError(f"reduced_pair needs a bipartite state, got dims {rho.dims}")
    ra = partial_trace(rho.matrix, rho.dims, keep="A")
    rb = partial_trace(rho.matrix, rho.dims, keep="B")
    return (
        DensityMatrix(ra, dims=(rho.dims[0],)),
        DensityMatrix(rb, dims=(rho.dims[1],)),
    )


def make_state(family: str, parameter: float) -> DensityMatrix:
    """Construct a named state family member (CLI entry point)."""
    if family == "tau-x":
        return tau_x(parameter)
    if family == "spa-choi":
        return spa_choi_state(parameter)
    if family == "max-entangled":
        d = int(parameter)
        if d != parameter:
            raise ValueError("max-entangled parameter must be an integer dimension")
        return max_entangled(d)
    raise ValueError(f"unknown state family {family!r}; choose from {STATE_FAMILIES}")


def state_to_json(rho: DensityMatrix, family: str | None = None, parameter: float | None = None) -> dict:
    """Serialize a state in the canonical matrix format plus provenance fields."""
    obj = matrix_to_json(rho.matrix)
    obj["dims"] = list(rho.dims)
    if family is not None:
        obj["family"] = family
    if parameter is not None:
        obj["parameter"] = float(parameter)
    return obj


def state_from_json(obj: dict) -> DensityMatrix:
    """Parse and validate a serialized state; raises ValueError naming the problem."""
    m = matrix_from_json(obj)
    dims = obj.get("dims")
    if dims is None:
        side = int(round(np.sqrt(m.shape[0])))
        if side * side != m.shape[0]:
            raise ValueError("field 'dims' missing and matrix dimension is not a square")
        dims = (side, side)
    else:
        if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
            raise ValueError("field 'dims' must be a list of integers")
        dims = tuple(dims)
    return DensityMatrix(m, dims=dims)
