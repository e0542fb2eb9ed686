"""Parameter scans behind the CLI: tabulated reproductions of the minor
sign structure, the SPA partial-transpose spectrum, the covariance matrix
criterion margin, and the witness expectation on the tau_x family.

Scans are pure functions of their grids, rows are emitted in parameter
order, and CSV/JSON rendering uses 15 significant digits, so identical
configurations produce byte-identical output.
"""

from __future__ import annotations

import io
from typing import Callable, NamedTuple

import numpy as np

from .detect import NEG_EIG_TOL, choi_witness, cmc_check, minor_d_tau, witness_value
from .linalg import hermitian_eigenvalues, partial_transpose
from .states import spa_choi_state, tau_x

FLOAT_FMT = "{:.15g}"


class ScanResult(NamedTuple):
    command: str
    parameters: dict
    columns: tuple[str, ...]
    rows: list[tuple]


def linear_grid(start: float, stop: float, count: int) -> np.ndarray:
    if count < 2:
        raise ValueError(f"grid needs count >= 2, got {count}")
    if not start < stop:
        raise ValueError(f"grid needs start < stop, got [{start}, {stop}]")
    return np.linspace(start, stop, count)


def log_grid(start: float, stop: float, count: int) -> np.ndarray:
    if start <= 0:
        raise ValueError(f"log grid needs start > 0, got {start}")
    if count < 2:
        raise ValueError(f"grid needs count >= 2, got {count}")
    if not start < stop:
        raise ValueError(f"grid needs start < stop, got [{start}, {stop}]")
    return np.geomspace(start, stop, count)


def bisect_root(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12) -> float | None:
    """Sign-change bisection; None when [lo, hi] does not bracket a root."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        return None
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def scan_minor(alphas: np.ndarray, xs: np.ndarray) -> ScanResult:
    """Rows (alpha, x, d_tau, sign, root): the detection minor over a grid.

    The root column repeats, per alpha, the bisection-located zero of the
    minor within the x range (NaN when the range holds no sign change).
    """
    rows = []
    for a in alphas:
        root = bisect_root(lambda x: minor_d_tau(a, x), float(xs[0]), float(xs[-1]))
        root_val = float("nan") if root is None else root
        for x in xs:
            d = minor_d_tau(a, float(x))
            rows.append((float(a), float(x), d, float(np.sign(d)), root_val))
    return ScanResult(
        command="scan-minor",
        parameters={"alphas": _grid_params(alphas), "xs": _grid_params(xs)},
        columns=("alpha", "x", "d_tau", "sign", "root"),
        rows=rows,
    )


def spa_spectrum_scan(alphas: np.ndarray) -> ScanResult:
    """Rows (alpha, nine ascending partial-transpose eigenvalues, negative count)."""
    rows = []
    for a in alphas:
        rho = spa_choi_state(float(a))
        eigs = hermitian_eigenvalues(partial_transpose(rho.matrix, rho.dims, "B"))
        n_neg = int((eigs < -NEG_EIG_TOL).sum())
        rows.append((float(a), *[float(e) for e in eigs], float(n_neg)))
    return ScanResult(
        command="spa-spectrum",
        parameters={"alphas": _grid_params(alphas)},
        columns=("alpha",) + tuple(f"eig{i}" for i in range(1, 10)) + ("count_negative",),
        rows=rows,
    )


def cmc_scan(alphas: np.ndarray) -> ScanResult:
    """Rows (alpha, lhs, rhs, violated) of the covariance matrix criterion."""
    rows = []
    for a in alphas:
        report = cmc_check(spa_choi_state(float(a)))
        rows.append((float(a), report.lhs, report.rhs, float(report.violated)))
    return ScanResult(
        command="cmc-scan",
        parameters={"alphas": _grid_params(alphas)},
        columns=("alpha", "lhs", "rhs", "violated"),
        rows=rows,
    )


def witness_tau_scan(xs: np.ndarray) -> ScanResult:
    """Rows (x, Tr[W tau_x], closed form (3-x)/(18(x^2+x+1)), detected)."""
    w = choi_witness(1.0)
    rows = []
    for x in xs:
        x = float(x)
        value = witness_value(w, tau_x(x))
        closed = (3.0 - x) / (18.0 * (x * x + x + 1.0))
        rows.append((x, value, closed, float(value < 0.0)))
    return ScanResult(
        command="witness-tau",
        parameters={"xs": _grid_params(xs)},
        columns=("x", "witness_value", "closed_form", "detected"),
        rows=rows,
    )


def _grid_params(grid: np.ndarray) -> dict:
    return {"start": float(grid[0]), "stop": float(grid[-1]), "count": int(len(grid))}


def _fmt(v: float) -> str:
    return FLOAT_FMT.format(v)


def render_csv(result: ScanResult) -> str:
    buf = io.StringIO()
    buf.write(",".join(result.columns) + "\n")
    for row in result.rows:
        buf.write(",".join("" if v != v else _fmt(v) for v in row) + "\n")
    return buf.getvalue()


def render_json_payload(result: ScanResult) -> dict:
    """JSON form of a scan; NaN cells become null, floats keep 15 digits."""
    rows = [[None if v != v else float(_fmt(v)) for v in row] for row in result.rows]
    return {
        "command": result.command,
        "parameters": result.parameters,
        "columns": list(result.columns),
        "rows": rows,
    }
