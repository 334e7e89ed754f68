"""Relaxation-constant extraction from metric time series.

Variable projection: for each candidate time constant the offset and
amplitude are the exact linear least-squares solution, so the search is a
one-dimensional scan over T followed by golden-section refinement.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import BadArguments, Underdetermined

MODEL_EXP = "exp"
MODEL_GAUSS = "gauss"

MIN_POINTS = 8
GRID_SIZE = 200
GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass
class FitResult:
    model: str
    offset: float          # asymptote y_inf
    amplitude: float
    time_constant: float   # nan when degenerate
    residual: float        # rms residual over the window
    window: Tuple[float, float]
    degenerate: bool


def _basis(t: np.ndarray, time_constant: float, model: str) -> np.ndarray:
    if model == MODEL_EXP:
        return np.exp(-t / time_constant)
    return np.exp(-((t / time_constant) ** 2))


def _solve(t, y, time_constant, model):
    design = np.column_stack([np.ones_like(t), _basis(t, time_constant, model)])
    coeff, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coeff
    return coeff, float(np.sqrt(np.mean(resid ** 2)))


def _default_window(t: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    """Start at the series maximum when it rises first and then decays."""
    i0 = int(np.argmax(y))
    span = float(y.max() - y.min())
    if (0 < i0 < len(y) - 1 and len(y) - i0 >= MIN_POINTS and span > 0
            and y[i0] - y[0] > 0.1 * span and y[i0] - y[-1] > 0.1 * span):
        return float(t[i0]), float(t[-1])
    return float(t[0]), float(t[-1])


def fit_relaxation(t, y, model: str = MODEL_EXP,
                   window: Optional[Tuple[float, float]] = None) -> FitResult:
    """Fit y(t) = y_inf + A * exp(-t/T) (or the Gaussian-decay variant)."""
    if model not in (MODEL_EXP, MODEL_GAUSS):
        raise BadArguments(f"unknown fit model {model!r}")
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.ndim != 1 or t.shape != y.shape:
        raise BadArguments("t and y must be equal-length 1-d arrays")
    if np.any(np.diff(t) <= 0):
        raise BadArguments("t must be strictly increasing")
    if window is None:
        window = _default_window(t, y)
    lo, hi = window
    sel = (t >= lo) & (t <= hi)
    tw, yw = t[sel], y[sel]
    if len(tw) < MIN_POINTS:
        raise Underdetermined(f"fewer than {MIN_POINTS} points in the fit window")
    tw = tw - tw[0]  # fit relative to window start; amplitude reported there

    dt = float(np.min(np.diff(tw)))
    span = float(tw[-1])
    grid = np.geomspace(dt, 10.0 * span, GRID_SIZE)
    residuals = np.array([_solve(tw, yw, tc, model)[1] for tc in grid])
    best = int(np.argmin(residuals))

    # golden-section refinement on log(T) around the best grid point
    a = np.log(grid[max(best - 1, 0)])
    b = np.log(grid[min(best + 1, GRID_SIZE - 1)])
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc = _solve(tw, yw, np.exp(c), model)[1]
    fd = _solve(tw, yw, np.exp(d), model)[1]
    for _ in range(80):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = _solve(tw, yw, np.exp(c), model)[1]
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = _solve(tw, yw, np.exp(d), model)[1]
    time_constant = float(np.exp((a + b) / 2.0))
    (offset, amplitude), residual = _solve(tw, yw, time_constant, model)

    if abs(amplitude) <= 1e-12 * max(1.0, float(np.max(np.abs(yw)))):
        return FitResult(model, float(np.mean(yw)), 0.0, float("nan"),
                         residual, window, True)
    return FitResult(model, float(offset), float(amplitude), time_constant,
                     residual, window, False)
