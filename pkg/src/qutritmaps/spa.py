"""Scalar machinery of the structural physical approximation.

The SPA mixes a positive-but-not-CP map with the depolarizing map, with the
mixing weight tuned so the result is completely positive:

    p* = lam * d * d' * beta^-1 / (lam * d * d' * beta^-1 + 1)

where lam clips the (negative) least Choi eigenvalue of the map being
approximated to a nonnegative disturbance strength.  For the map family in
this package d = d' = 3 and beta = 1 (a consequence of trace preservation).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _check_alpha(alpha: float) -> float:
    a = float(alpha)
    if not 0.0 < a <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return a


def least_choi_eigenvalue(alpha: float) -> float:
    """Closed form (1 - sqrt(1 + 4a^2)) / (6 + 6a^2) for the family's least Choi eigenvalue."""
    a = _check_alpha(alpha)
    return (1.0 - np.sqrt(1.0 + 4.0 * a * a)) / (6.0 + 6.0 * a * a)


@dataclass(frozen=True)
class SpaParameters:
    alpha: float
    lam: float          # max(0, -least Choi eigenvalue)
    p_star: float       # depolarizing weight in [0, 1)
    d: int = 3
    d_prime: int = 3
    beta: float = 1.0


def spa_parameters(alpha: float) -> SpaParameters:
    """Disturbance strength and optimal mixing weight for the SPA at ``alpha``."""
    a = _check_alpha(alpha)
    lam = max(0.0, -least_choi_eigenvalue(a))
    scaled = lam * 3 * 3 / 1.0
    return SpaParameters(alpha=a, lam=lam, p_star=scaled / (scaled + 1.0))
