"""Entanglement detection criteria for two-qutrit states.

Four independent routes are implemented: the partial-transpose spectrum,
positive-map detection (a negative eigenvalue of (I (x) L) rho), witness
expectation values Tr[W rho], and the covariance matrix criterion.  The
module also carries the closed-form principal minor that governs where the
positive-map family detects the tau_x states, and a weak-optimality search
over pure product vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .choi import choi_of
from .gellmann import gellmann_basis
from .linalg import (
    as_complex_matrix,
    det_cofactor,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    hs_inner,
    is_hermitian,
    partial_transpose,
    trace_norm,
)
from .maps import MapKind, QutritMap, extend_one_sided, lambda_alpha
from .states import DensityMatrix, reduced_pair, tau_x

NEG_EIG_TOL = 1e-10
CMC_MARGIN_TOL = 1e-12


@dataclass(frozen=True)
class WitnessOperator:
    """Hermitian 9x9 block-positive operator used as an entanglement witness."""

    matrix: np.ndarray
    label: str = "witness"

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        if m.shape != (9, 9):
            raise ValueError(f"witness must be 9x9, got {m.shape}")
        if not is_hermitian(m):
            raise ValueError("witness operator must be Hermitian within 1e-12")
        object.__setattr__(self, "matrix", m)


def choi_witness(alpha: float) -> WitnessOperator:
    """The Choi matrix of the positive-map family, used as a witness."""
    return WitnessOperator(choi_of(lambda_alpha(alpha)), label=f"choi-witness({alpha:g})")


def ppt_spectrum(rho: DensityMatrix) -> np.ndarray:
    """Eigenvalues (ascending) of the partial transpose; NPT iff the least is < -1e-10."""
    return hermitian_eigenvalues(partial_transpose(rho.matrix, rho.dims, subsystem="B"))


def map_detects(qmap: QutritMap, rho: DensityMatrix) -> tuple[bool, float]:
    """Whether (I (x) map) rho develops a negative eigenvalue, and that eigenvalue."""
    least = float(hermitian_eigenvalues(extend_one_sided(qmap, rho.matrix))[0])
    return least < -NEG_EIG_TOL, least


def minor_d_tau(alpha: float, x: float) -> float:
    """Closed-form principal minor of (I (x) L_a)(tau_x) on rows/columns {0, 4, 8}.

    Up to a positive prefactor: N [x(2+x)(a + x/a) - a(1+x)] with
    N = 1/(a + 1/a), divided by the tau_x normalization 3(1 + x + 1/x).
    Negative exactly where the map detects tau_x.
    """
    a = float(alpha)
    if not 0.0 < a <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"tau_x parameter must be positive, got {x}")
    norm = 1.0 / (a + 1.0 / a)
    return norm * (x * (2.0 + x) * (a + x / a) - a * (1.0 + x)) / (3.0 * (1.0 + x + 1.0 / x))


def minor_d_tau_numeric(alpha: float, x: float) -> float:
    """The same minor extracted numerically from (I (x) L_a)(tau_x)."""
    m = extend_one_sided(lambda_alpha(alpha), tau_x(x).matrix)
    idx = np.ix_((0, 4, 8), (0, 4, 8))
    return det_cofactor(m[idx]).real


def witness_value(w: WitnessOperator, rho: DensityMatrix) -> float:
    """Tr[W rho]; negative value certifies entanglement."""
    if w.matrix.shape != rho.matrix.shape:
        raise ValueError(
            f"dimension mismatch: witness {w.matrix.shape} vs state {rho.matrix.shape}"
        )
    val = hs_inner(w.matrix, rho.matrix)
    if abs(val.imag) > 1e-12:
        raise ValueError(f"witness value has imaginary part {val.imag:.3e}")
    return float(val.real)


# --------------------------------------------------------------------------
# Weak optimality: search for a pure product vector with <gd|W|gd> = 0
# --------------------------------------------------------------------------

class WeakOptimality(NamedTuple):
    found: bool
    gamma: np.ndarray
    delta: np.ndarray
    value: float


def _vector_from_angles(t1, t2, p1, p2) -> np.ndarray:
    """Unit 3-vector (cos t1, sin t1 cos t2 e^{i p1}, sin t1 sin t2 e^{i p2})."""
    t1, t2, p1, p2 = np.broadcast_arrays(
        np.asarray(t1, dtype=float),
        np.asarray(t2, dtype=float),
        np.asarray(p1, dtype=float),
        np.asarray(p2, dtype=float),
    )
    sin1 = np.sin(t1)
    return np.stack(
        [
            np.cos(t1).astype(complex),
            sin1 * np.cos(t2) * np.exp(1j * p1),
            sin1 * np.sin(t2) * np.exp(1j * p2),
        ],
        axis=-1,
    )


def _angles_from_vector(v: np.ndarray) -> np.ndarray:
    """Invert the parameterization after fixing the global phase."""
    v = np.asarray(v, dtype=complex)
    if abs(v[0]) > 1e-14:
        v = v * np.exp(-1j * np.angle(v[0]))
    t1 = float(np.arccos(np.clip(abs(v[0]), 0.0, 1.0)))
    t2 = float(np.arctan2(abs(v[2]), abs(v[1])))
    p1 = float(np.angle(v[1])) if abs(v[1]) > 1e-14 else 0.0
    p2 = float(np.angle(v[2])) if abs(v[2]) > 1e-14 else 0.0
    return np.array([t1, t2, p1, p2])


def product_expectation(w: WitnessOperator, gamma, delta) -> float:
    """<gamma (x) delta | W | gamma (x) delta> for unit vectors gamma, delta."""
    vec = np.kron(np.asarray(gamma, dtype=complex), np.asarray(delta, dtype=complex))
    return float((vec.conj() @ w.matrix @ vec).real)


def weak_optimality_check(w: WitnessOperator, grid_points: int = 12) -> WeakOptimality:
    """Minimize <gd|W|gd> over pure product vectors.

    Coarse stage: a grid over the 4-angle parameterization of gamma (the
    optimal delta for fixed gamma is the least eigenvector of the 3x3
    pinched operator, so that side is minimized exactly).  Fine stage:
    derivative-free coordinate descent on all 8 angles with step halving
    down to 1e-10.  Deterministic and seed-free; the witness is weakly
    optimal when the minimum reaches zero (<= 1e-9).
    """
    n = int(grid_points)
    halves = np.linspace(0.0, np.pi / 2.0, n)
    phases = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    t1g, t2g, p1g, p2g = [g.ravel() for g in np.meshgrid(halves, halves, phases, phases)]
    gammas = _vector_from_angles(t1g, t2g, p1g, p2g)

    # pinch the witness with each grid gamma: M[k, l] = <gamma, e_k| W |gamma, e_l>
    wr = w.matrix.reshape(3, 3, 3, 3)
    pinched = np.einsum("bi,ikjl,bj->bkl", gammas.conj(), wr, gammas, optimize=True)
    pinched = 0.5 * (pinched + np.conj(np.swapaxes(pinched, -1, -2)))
    floor = hermitian_eigenvalues(pinched)[:, 0]

    order = np.argsort(floor)
    best_value = np.inf
    best_angles = None
    for b in order[:4]:
        evals, evecs = hermitian_eigensystem(pinched[b])
        delta0 = evecs[:, 0]
        angles = np.concatenate(
            [np.array([t1g[b], t2g[b], p1g[b], p2g[b]]), _angles_from_vector(delta0)]
        )
        value, angles = _coordinate_descent(w, angles)
        if value < best_value:
            best_value = value
            best_angles = angles

    gamma = _vector_from_angles(*best_angles[:4])
    delta = _vector_from_angles(*best_angles[4:])
    return WeakOptimality(best_value <= 1e-9, gamma, delta, best_value)


def _coordinate_descent(w: WitnessOperator, angles: np.ndarray, step0: float = np.pi / 12.0):
    angles = angles.copy()

    def f(a):
        return product_expectation(w, _vector_from_angles(*a[:4]), _vector_from_angles(*a[4:]))

    current = f(angles)
    step = step0
    while step >= 1e-10:
        improved = False
        for i in range(8):
            for delta in (step, -step):
                trial = angles.copy()
                trial[i] += delta
                val = f(trial)
                if val < current:
                    current, angles = val, trial
                    improved = True
        if not improved:
            step *= 0.5
    return current, angles


# --------------------------------------------------------------------------
# Covariance matrix criterion
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CmcReport:
    """Covariance matrix criterion evidence: ||C||_1 <= rhs for separable states."""

    c_matrix: np.ndarray
    lhs: float
    rhs: float
    violated: bool

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "violated": self.violated}


def _orthonormal_observables() -> np.ndarray:
    # Unit Hilbert-Schmidt norm is required for the criterion to be a theorem.
    mats, norms = gellmann_basis()
    return np.stack([g / np.sqrt(nrm) for g, nrm in zip(mats, norms)])


def cmc_check(rho: DensityMatrix) -> CmcReport:
    """Covariance matrix criterion with orthonormal local observables.

    C_ij = <A_i (x) B_j> - <A_i><B_j> over the normalized operator basis;
    a separable state obeys ||C||_1 <= sqrt((1 - Tr rA^2)(1 - Tr rB^2)), so
    a violation certifies entanglement.
    """
    if rho.dims != (3, 3):
        raise ValueError(f"cmc_check expects a two-qutrit state, got dims {rho.dims}")
    obs = _orthonormal_observables()
    ra, rb = reduced_pair(rho)
    r = rho.matrix.reshape(3, 3, 3, 3)
    joint = np.einsum("ikjl,aji,blk->ab", r, obs, obs, optimize=True).real
    mean_a = np.einsum("ij,aji->a", ra.matrix, obs).real
    mean_b = np.einsum("ij,aji->a", rb.matrix, obs).real
    c = joint - np.outer(mean_a, mean_b)
    lhs = trace_norm(c)
    rhs = float(np.sqrt(max(0.0, (1.0 - ra.purity()) * (1.0 - rb.purity()))))
    return CmcReport(c_matrix=c, lhs=lhs, rhs=rhs, violated=lhs > rhs + CMC_MARGIN_TOL)


# --------------------------------------------------------------------------
# Aggregate report
# --------------------------------------------------------------------------

class MapVerdict(NamedTuple):
    label: str
    min_eigenvalue: float
    detected: bool


@dataclass(frozen=True)
class DetectionReport:
    ppt_spectrum: np.ndarray
    map_verdicts: tuple[MapVerdict, ...]
    witness_values: tuple[tuple[str, float], ...]
    cmc: CmcReport

    @property
    def ppt_min_eig(self) -> float:
        return float(self.ppt_spectrum[0])

    @property
    def is_npt(self) -> bool:
        return self.ppt_min_eig < -NEG_EIG_TOL

    def to_json(self) -> dict:
        return {
            "ppt": {
                "min_eigenvalue": self.ppt_min_eig,
                "spectrum": [float(v) for v in self.ppt_spectrum],
                "npt": self.is_npt,
            },
            "maps": [
                {"map": v.label, "min_eigenvalue": v.min_eigenvalue, "detected": v.detected}
                for v in self.map_verdicts
            ],
            "witnesses": [{"witness": lbl, "value": val} for lbl, val in self.witness_values],
            "cmc": self.cmc.to_json(),
        }


REPORT_MAPS = (
    QutritMap(MapKind.LAMBDA_ALPHA, 1.0),
    QutritMap(MapKind.LAMBDA_ALPHA_DUAL, 1.0),
    QutritMap(MapKind.CHOI),
    QutritMap(MapKind.MILLER_OLKIEWICZ),
)


def full_report(rho: DensityMatrix) -> DetectionReport:
    """Run every criterion on a two-qutrit state; deterministic for fixed input."""
    verdicts = []
    for qmap in REPORT_MAPS:
        detected, least = map_detects(qmap, rho)
        verdicts.append(MapVerdict(qmap.label, least, detected))
    w = choi_witness(1.0)
    return DetectionReport(
        ppt_spectrum=ppt_spectrum(rho),
        map_verdicts=tuple(verdicts),
        witness_values=((w.label, witness_value(w, rho)),),
        cmc=cmc_check(rho),
    )
