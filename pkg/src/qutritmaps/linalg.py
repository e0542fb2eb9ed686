"""Dense complex linear algebra for small fixed-size operators.

Everything in this package runs on 3x3 single-qutrit operators and 9x9
two-qutrit operators, so the routines here are written for tiny dense
matrices: a cyclic Jacobi eigensolver, principal minors by cofactor
expansion, tensor-structure manipulations and the Hilbert-Schmidt inner
product.  All functions are pure and accept plain complex ndarrays.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

HERMITICITY_RTOL = 1e-12
PSD_TOL = 1e-10

_JACOBI_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 100


def as_complex_matrix(m) -> np.ndarray:
    """Coerce input to a square complex128 ndarray (stacks allowed)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(m, rtol: float = HERMITICITY_RTOL) -> bool:
    """True if max_ij |m_ij - conj(m_ji)| <= rtol * max_ij |m_ij|."""
    a = as_complex_matrix(m)
    scale = np.abs(a).max()
    if scale == 0.0:
        return True
    dev = np.abs(a - np.conj(np.swapaxes(a, -1, -2))).max()
    return bool(dev <= rtol * scale)


def kron(a, b) -> np.ndarray:
    """Kronecker product: result[(i*db+k),(j*db+l)] = a[i,j] * b[k,l]."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def _check_bipartite(m: np.ndarray, dims: tuple[int, int]) -> None:
    da, db = dims
    if m.shape[-1] != da * db:
        raise ValueError(
            f"matrix dimension {m.shape[-1]} does not match subsystem dims {da}x{db}"
        )


def partial_transpose(m, dims: tuple[int, int] = (3, 3), subsystem: str = "B") -> np.ndarray:
    """Transpose one tensor factor of a bipartite operator.

    For ``subsystem="B"`` each da x da grid block of size db x db is
    transposed in place; applying the map twice returns the input exactly.
    """
    a = as_complex_matrix(m)
    da, db = dims
    _check_bipartite(a, dims)
    r = a.reshape(da, db, da, db)
    if subsystem == "B":
        r = r.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return r.reshape(da * db, da * db)


def partial_trace(m, dims: tuple[int, int] = (3, 3), keep: str = "A") -> np.ndarray:
    """Trace out one tensor factor, keeping subsystem ``keep``."""
    a = as_complex_matrix(m)
    da, db = dims
    _check_bipartite(a, dims)
    r = a.reshape(da, db, da, db)
    if keep == "A":
        return np.trace(r, axis1=1, axis2=3)
    if keep == "B":
        return np.trace(r, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _offdiag_norm(a: np.ndarray) -> np.ndarray:
    # Summing |a_ij|^2 over i != j directly; the algebraically equivalent
    # ||a||^2 - ||diag||^2 cancels catastrophically near convergence.
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt((np.abs(a) ** 2 * mask).sum(axis=(-2, -1)))


def _jacobi(m: np.ndarray, compute_vectors: bool):
    """Cyclic complex Jacobi diagonalization of a stack of Hermitian matrices.

    Sweeps all index pairs in fixed (p, q) order, annihilating each pivot
    with the small-angle rotation (|theta| <= pi/4, required for cyclic
    convergence), until the off-diagonal Frobenius mass drops below
    1e-14 * ||m||, for at most 100 sweeps.
    """
    A = np.array(m, dtype=complex)
    single = A.ndim == 2
    if single:
        A = A[None]
    n = A.shape[-1]
    norms = np.linalg.norm(A, axis=(-2, -1))
    thresh = _JACOBI_TOL * np.maximum(norms, np.finfo(float).tiny)
    V = np.broadcast_to(np.eye(n, dtype=complex), A.shape).copy() if compute_vectors else None

    converged = False
    for _ in range(_JACOBI_MAX_SWEEPS):
        if np.all(_offdiag_norm(A) <= thresh):
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[:, p, q].copy()
                ab = np.abs(b)
                active = ab > np.finfo(float).tiny
                app = A[:, p, p].real
                aqq = A[:, q, q].real
                theta = np.where(active, 0.5 * np.arctan2(2.0 * ab, app - aqq), 0.0)
                theta = np.where(theta > np.pi / 4, theta - np.pi / 2, theta)
                c = np.cos(theta)
                s = np.sin(theta)
                # e^{-i arg(b)}; rotation is R = [[c, -s], [s e^{-i b}, c e^{-i b}]]
                ph = np.where(active, np.conj(b) / np.where(active, ab, 1.0), 1.0)
                colp = A[:, :, p].copy()
                colq = A[:, :, q].copy()
                A[:, :, p] = c[:, None] * colp + (s * ph)[:, None] * colq
                A[:, :, q] = -s[:, None] * colp + (c * ph)[:, None] * colq
                rowp = A[:, p, :].copy()
                rowq = A[:, q, :].copy()
                A[:, p, :] = c[:, None] * rowp + (s * np.conj(ph))[:, None] * rowq
                A[:, q, :] = -s[:, None] * rowp + (c * np.conj(ph))[:, None] * rowq
                if compute_vectors:
                    vp = V[:, :, p].copy()
                    vq = V[:, :, q].copy()
                    V[:, :, p] = c[:, None] * vp + (s * ph)[:, None] * vq
                    V[:, :, q] = -s[:, None] * vp + (c * ph)[:, None] * vq
    if not converged:
        raise np.linalg.LinAlgError(
            f"Jacobi eigensolver did not converge in {_JACOBI_MAX_SWEEPS} sweeps"
        )

    w = np.einsum("bii->bi", A).real
    order = np.argsort(w, axis=-1)
    w = np.take_along_axis(w, order, axis=-1)
    if compute_vectors:
        V = np.take_along_axis(V, order[:, None, :], axis=-1)
        if single:
            return w[0], V[0]
        return w, V
    return w[0] if single else w


def _require_hermitian(a: np.ndarray) -> None:
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian within tolerance 1e-12 (relative)")


def hermitian_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix (or stack), sorted ascending.

    Uses the cyclic Jacobi solver above; raises ValueError on non-Hermitian
    input and LinAlgError if the sweep limit is exhausted.
    """
    a = as_complex_matrix(m)
    _require_hermitian(a)
    return _jacobi(a, compute_vectors=False)


def hermitian_eigensystem(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unitary eigenvector matrix, m = V diag(w) V†."""
    a = as_complex_matrix(m)
    _require_hermitian(a)
    return _jacobi(a, compute_vectors=True)


def min_eigenvalue(m) -> float:
    """Least eigenvalue of a Hermitian matrix."""
    return float(hermitian_eigenvalues(m)[..., 0].min())


def is_psd(m, tol: float = PSD_TOL) -> bool:
    """Positive semidefiniteness test: min eigenvalue >= -tol * max(1, ||m||)."""
    a = as_complex_matrix(m)
    bound = tol * max(1.0, float(np.linalg.norm(a)))
    return min_eigenvalue(a) >= -bound


def det_cofactor(m) -> complex:
    """Determinant by cofactor expansion (intended for dim <= 4)."""
    a = as_complex_matrix(m)
    n = a.shape[0]
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    total = 0.0 + 0.0j
    rest = list(range(1, n))
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        minor = a[np.ix_(rest, cols)]
        total += (-1) ** j * a[0, j] * det_cofactor(minor)
    return complex(total)


def all_principal_minors(m) -> list[tuple[tuple[int, ...], float]]:
    """Every principal minor of a Hermitian matrix, as (index subset, value).

    Restricted to dim <= 4 where cofactor expansion is exact and cheap.  A
    minor with imaginary part above 1e-10 signals non-Hermitian input.
    """
    a = as_complex_matrix(m)
    n = a.shape[0]
    if n > 4:
        raise ValueError(f"principal minors supported for dim <= 4, got {n}")
    out = []
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            d = det_cofactor(a[np.ix_(idx, idx)])
            if abs(d.imag) > 1e-10:
                raise ValueError(
                    f"principal minor {idx} has imaginary part {d.imag:.3e}; "
                    "input is not Hermitian"
                )
            out.append((idx, d.real))
    return out


def trace_norm(m) -> float:
    """Sum of singular values, via eigenvalues of m†m."""
    a = as_complex_matrix(m)
    gram = a.conj().T @ a
    w = _jacobi(gram, compute_vectors=False)
    return float(np.sqrt(np.clip(w, 0.0, None)).sum())


def hs_inner(x, y) -> complex:
    """Hilbert-Schmidt inner product <X, Y> = Tr[X† Y]."""
    a = as_complex_matrix(x)
    b = as_complex_matrix(y)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.trace(a.conj().T @ b))


def matrix_to_json(m) -> dict:
    """Serialize a matrix to the canonical {"dim", "re", "im"} JSON object."""
    a = as_complex_matrix(m)
    n = a.shape[0]
    return {
        "dim": n,
        "re": [float(v) for v in a.real.ravel()],
        "im": [float(v) for v in a.imag.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the canonical matrix JSON object; raises ValueError naming the bad field."""
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    for field in ("dim", "re", "im"):
        if field not in obj:
            raise ValueError(f"matrix JSON missing field {field!r}")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ValueError("field 'dim' must be a positive integer")
    re = obj["re"]
    im = obj["im"]
    for name, arr in (("re", re), ("im", im)):
        if not isinstance(arr, list) or len(arr) != dim * dim:
            raise ValueError(f"field {name!r} must be a list of {dim * dim} reals")
    real = np.array(re, dtype=float).reshape(dim, dim)
    imag = np.array(im, dtype=float).reshape(dim, dim)
    return real + 1j * imag
