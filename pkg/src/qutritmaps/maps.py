"""Catalogue of linear maps on 3x3 complex matrices.

The central object is the trace-preserving one-parameter family

    L_a(X) = 1/(a + 1/a) * [[a(x11+x22), -x12,          -a*x13       ],
                            [-x21,       (x22+x33)/a,   -x32         ],
                            [-a*x31,     -x23,          a*x33 + x11/a]]

for a in (0, 1], which is positive but not completely positive, together
with its Hilbert-Schmidt adjoint, its structural physical approximation,
and the classic reference maps (Choi, Miller-Olkiewicz, depolarizing,
transposition).  All actions are given entrywise and accept stacked input
of shape (..., 3, 3).  ``extend_one_sided`` lifts any map to 9x9 two-qutrit
operators by acting on the second tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import as_complex_matrix
from .spa import spa_parameters

SQRT2 = np.sqrt(2.0)


class MapKind(str, Enum):
    IDENTITY = "identity"
    TRANSPOSITION = "transposition"
    DEPOLARIZING = "depolarizing"
    CHOI = "choi"
    MILLER_OLKIEWICZ = "miller-olkiewicz"
    LAMBDA_ALPHA = "lambda-alpha"
    LAMBDA_ALPHA_DUAL = "lambda-alpha-dual"
    SPA_LAMBDA_ALPHA = "spa-lambda-alpha"


PARAMETRIC_KINDS = frozenset(
    {MapKind.LAMBDA_ALPHA, MapKind.LAMBDA_ALPHA_DUAL, MapKind.SPA_LAMBDA_ALPHA}
)


def check_alpha(alpha: float) -> float:
    """Validate the family parameter; the positivity proof needs a in (0, 1]."""
    a = float(alpha)
    if not 0.0 < a <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return a


def _check_qutrit(x) -> np.ndarray:
    a = as_complex_matrix(x)
    if a.shape[-1] != 3:
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    return a


def apply_lambda_alpha(alpha: float, x) -> np.ndarray:
    """Action of the one-parameter positive map on a 3x3 matrix (or stack)."""
    a = check_alpha(alpha)
    m = _check_qutrit(x)
    norm = 1.0 / (a + 1.0 / a)
    out = np.empty_like(m)
    out[..., 0, 0] = a * (m[..., 0, 0] + m[..., 1, 1])
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 0, 2] = -a * m[..., 0, 2]
    out[..., 1, 0] = -m[..., 1, 0]
    out[..., 1, 1] = (m[..., 1, 1] + m[..., 2, 2]) / a
    out[..., 1, 2] = -m[..., 2, 1]
    out[..., 2, 0] = -a * m[..., 2, 0]
    out[..., 2, 1] = -m[..., 1, 2]
    out[..., 2, 2] = a * m[..., 2, 2] + m[..., 0, 0] / a
    return norm * out


def apply_lambda_alpha_dual(alpha: float, x) -> np.ndarray:
    """Hilbert-Schmidt adjoint of ``apply_lambda_alpha``.

    Defined by <dual(X), Y> = <X, L_a(Y)> for all X, Y; it is unital rather
    than trace preserving (the two coincide at a = 1).
    """
    a = check_alpha(alpha)
    m = _check_qutrit(x)
    norm = 1.0 / (a + 1.0 / a)
    out = np.empty_like(m)
    out[..., 0, 0] = a * m[..., 0, 0] + m[..., 2, 2] / a
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 0, 2] = -a * m[..., 0, 2]
    out[..., 1, 0] = -m[..., 1, 0]
    out[..., 1, 1] = a * m[..., 0, 0] + m[..., 1, 1] / a
    out[..., 1, 2] = -m[..., 2, 1]
    out[..., 2, 0] = -a * m[..., 2, 0]
    out[..., 2, 1] = -m[..., 1, 2]
    out[..., 2, 2] = m[..., 1, 1] / a + a * m[..., 2, 2]
    return norm * out


def apply_choi_map(x) -> np.ndarray:
    """The classic indecomposable Choi map: cyclic diagonal sums, negated off-diagonals."""
    m = _check_qutrit(x)
    out = -m.copy()
    out[..., 0, 0] = m[..., 0, 0] + m[..., 2, 2]
    out[..., 1, 1] = m[..., 1, 1] + m[..., 0, 0]
    out[..., 2, 2] = m[..., 2, 2] + m[..., 1, 1]
    return out


def apply_miller_olkiewicz(x) -> np.ndarray:
    """The Miller-Olkiewicz indecomposable map on 3x3 matrices."""
    m = _check_qutrit(x)
    out = np.zeros_like(m)
    half = 0.5 * (m[..., 0, 0] + m[..., 1, 1])
    out[..., 0, 0] = half
    out[..., 1, 1] = half
    out[..., 2, 2] = m[..., 2, 2]
    out[..., 0, 2] = m[..., 0, 2] / SQRT2
    out[..., 1, 2] = m[..., 2, 1] / SQRT2
    out[..., 2, 0] = m[..., 2, 0] / SQRT2
    out[..., 2, 1] = m[..., 1, 2] / SQRT2
    return out


def apply_depolarizing(d: int, x) -> np.ndarray:
    """Depolarizing map: X -> Tr(X)/d * I_d."""
    m = as_complex_matrix(x)
    if m.shape[-1] != d:
        raise ValueError(f"depolarizing map of dimension {d} got shape {m.shape}")
    tr = np.trace(m, axis1=-2, axis2=-1)
    eye = np.eye(d, dtype=complex)
    return (tr[..., None, None] / d) * eye


def apply_spa(alpha: float, x) -> np.ndarray:
    """Optimal structural physical approximation of the positive map family.

    Closed form with s = sqrt(4a^2+1) and common denominator 2a^2 + 3s - 1;
    identical to the convex mixture p* * depolarizing + (1-p*) * L_a, which
    is asserted in debug builds.
    """
    a = check_alpha(alpha)
    m = _check_qutrit(x)
    s = np.sqrt(4.0 * a * a + 1.0)
    den = 2.0 * a * a + 3.0 * s - 1.0
    x11 = m[..., 0, 0]
    x22 = m[..., 1, 1]
    x33 = m[..., 2, 2]
    out = np.empty_like(m)
    out[..., 0, 0] = (x33 * (s - 1.0) + (x11 + x22) * (2.0 * a * a + s - 1.0)) / den
    out[..., 0, 1] = -2.0 * a * m[..., 0, 1] / den
    out[..., 0, 2] = -2.0 * a * a * m[..., 0, 2] / den
    out[..., 1, 0] = -2.0 * a * m[..., 1, 0] / den
    out[..., 1, 1] = (x11 * (s - 1.0) + (x22 + x33) * (s + 1.0)) / den
    out[..., 1, 2] = -2.0 * a * m[..., 2, 1] / den
    out[..., 2, 0] = -2.0 * a * a * m[..., 2, 0] / den
    out[..., 2, 1] = -2.0 * a * m[..., 1, 2] / den
    out[..., 2, 2] = (x11 * (s + 1.0) + x22 * (s - 1.0) + x33 * (2.0 * a * a + s - 1.0)) / den
    if __debug__:
        assert np.allclose(out, spa_as_mixture(a, m), atol=1e-12), (
            "SPA closed form disagrees with its defining convex mixture"
        )
    return out


def spa_as_mixture(alpha: float, x) -> np.ndarray:
    """SPA as its definition: p* * depolarizing + (1 - p*) * L_a."""
    a = check_alpha(alpha)
    m = _check_qutrit(x)
    p = spa_parameters(a).p_star
    return p * apply_depolarizing(3, m) + (1.0 - p) * apply_lambda_alpha(a, m)


@dataclass(frozen=True)
class QutritMap:
    """A named, optionally parameterized linear map on 3x3 matrices."""

    kind: MapKind
    alpha: float | None = None

    def __post_init__(self):
        kind = MapKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in PARAMETRIC_KINDS:
            if self.alpha is None:
                raise ValueError(f"map kind {kind.value!r} requires alpha")
            object.__setattr__(self, "alpha", check_alpha(self.alpha))
        elif self.alpha is not None:
            raise ValueError(f"map kind {kind.value!r} takes no alpha")

    @property
    def label(self) -> str:
        if self.alpha is None:
            return self.kind.value
        return f"{self.kind.value}({self.alpha:g})"

    def apply(self, x) -> np.ndarray:
        m = _check_qutrit(x)
        if self.kind is MapKind.IDENTITY:
            return m.copy()
        if self.kind is MapKind.TRANSPOSITION:
            return np.swapaxes(m, -1, -2).copy()
        if self.kind is MapKind.DEPOLARIZING:
            return apply_depolarizing(3, m)
        if self.kind is MapKind.CHOI:
            return apply_choi_map(m)
        if self.kind is MapKind.MILLER_OLKIEWICZ:
            return apply_miller_olkiewicz(m)
        if self.kind is MapKind.LAMBDA_ALPHA:
            return apply_lambda_alpha(self.alpha, m)
        if self.kind is MapKind.LAMBDA_ALPHA_DUAL:
            return apply_lambda_alpha_dual(self.alpha, m)
        if self.kind is MapKind.SPA_LAMBDA_ALPHA:
            return apply_spa(self.alpha, m)
        raise ValueError(f"unhandled map kind {self.kind!r}")

    def to_json(self) -> dict:
        obj = {"kind": self.kind.value}
        if self.alpha is not None:
            obj["alpha"] = float(self.alpha)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "QutritMap":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("map JSON must be an object with a 'kind' field")
        try:
            kind = MapKind(obj["kind"])
        except ValueError:
            raise ValueError(f"unknown map kind {obj['kind']!r}") from None
        return cls(kind=kind, alpha=obj.get("alpha"))


def lambda_alpha(alpha: float) -> QutritMap:
    return QutritMap(MapKind.LAMBDA_ALPHA, alpha)


def lambda_alpha_dual(alpha: float) -> QutritMap:
    return QutritMap(MapKind.LAMBDA_ALPHA_DUAL, alpha)


def spa_lambda_alpha(alpha: float) -> QutritMap:
    return QutritMap(MapKind.SPA_LAMBDA_ALPHA, alpha)


def extend_one_sided(qmap: QutritMap, rho) -> np.ndarray:
    """Apply (I (x) map) to a 9x9 two-qutrit operator.

    The operator is viewed as a 3x3 grid of 3x3 blocks indexed by the first
    subsystem; the map acts on every block.  For product input kron(A, B)
    the result is kron(A, map(B)).
    """
    m = as_complex_matrix(rho)
    if m.shape != (9, 9):
        raise ValueError(f"extend_one_sided expects a 9x9 matrix, got {m.shape}")
    blocks = m.reshape(3, 3, 3, 3).transpose(0, 2, 1, 3)  # [i, j, :, :] = block (i, j)
    mapped = qmap.apply(blocks.reshape(9, 3, 3)).reshape(3, 3, 3, 3)
    return mapped.transpose(0, 2, 1, 3).reshape(9, 9)
