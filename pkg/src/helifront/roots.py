"""Zero isolation for smooth functions of one variable on a grid."""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.optimize import brentq

XTOL = 1e-12
DEDUP = 1e-8


def _values(f: Callable, grid: np.ndarray) -> np.ndarray:
    return np.array([float(f(float(t))) for t in grid])


def isolate_zeros(
    f: Callable,
    interval: tuple[float, float],
    n_grid: int,
    df: Callable | None = None,
    zero_tol: float = 1e-9,
) -> list[float]:
    """Zeros of ``f`` on ``interval``.

    Odd-order zeros come from sign changes refined by Brent's method.  Zeros
    of even order show up as local minima of ``|f|``; those are refined as
    critical points (sign changes of ``df``) and accepted when
    ``|f| <= zero_tol`` there.
    """
    lo, hi = map(float, interval)
    grid = np.linspace(lo, hi, n_grid)
    vals = _values(f, grid)
    found = [float(t) for t, y in zip(grid, vals) if y == 0.0]
    for i in range(n_grid - 1):
        y0, y1 = vals[i], vals[i + 1]
        if y0 != 0.0 and y1 != 0.0 and np.sign(y0) != np.sign(y1):
            found.append(brentq(f, grid[i], grid[i + 1], xtol=XTOL, rtol=4 * np.finfo(float).eps))
    if df is not None:
        mag = np.abs(vals)
        for i in range(n_grid):
            if mag[i] == 0.0:
                continue
            left = mag[i - 1] if i > 0 else np.inf
            right = mag[i + 1] if i < n_grid - 1 else np.inf
            if not (mag[i] <= left and mag[i] <= right):
                continue
            j0, j1 = max(i - 1, 0), min(i + 1, n_grid - 1)
            if np.any(np.sign(vals[j0 : j1 + 1]) != np.sign(vals[i])):
                continue  # handled by the sign-change pass
            c = _critical_point(df, grid[j0], grid[j1], grid[i])
            if c is not None and abs(float(f(c))) <= zero_tol:
                found.append(c)
    return _dedup(found)


def _critical_point(df: Callable, a: float, b: float, guess: float) -> float | None:
    da, db = float(df(a)), float(df(b))
    if da == 0.0:
        return a
    if db == 0.0:
        return b
    if np.sign(da) == np.sign(db):
        dg = float(df(guess))
        return guess if dg == 0.0 else None
    return brentq(df, a, b, xtol=XTOL, rtol=4 * np.finfo(float).eps)


def _dedup(points: list[float]) -> list[float]:
    out: list[float] = []
    for p in sorted(points):
        if not out or p - out[-1] > DEDUP:
            out.append(p)
    return out


def vanishing_order(coeffs, tol: float = 1e-7, max_order: int | None = None) -> int | None:
    """Index of the first Taylor coefficient that is not negligible.

    Coefficients below ``tol`` times the largest one (or 1) count as zero.
    Returns None if every coefficient is negligible.
    """
    coeffs = list(coeffs)
    if max_order is not None:
        coeffs = coeffs[: max_order + 1]
    scale = max(1.0, max(abs(c) for c in coeffs))
    for k, c in enumerate(coeffs):
        if abs(c) > tol * scale:
            return k
    return None
