"""Least-squares line fits used by the decay and trend diagnostics."""

from __future__ import annotations

import numpy as np

__all__ = ["least_squares_line", "r_squared"]


def least_squares_line(x, y) -> tuple[float, float, float]:
    """Fit y = slope*x + intercept; returns (slope, intercept, r_squared)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points to fit a line")
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept), r_squared(x, y, slope, intercept)


def r_squared(x, y, slope: float, intercept: float) -> float:
    y = np.asarray(y, dtype=float)
    resid = y - (slope * np.asarray(x, dtype=float) + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot <= 1e-300:
        # constant data: a flat line is a perfect fit
        return 1.0 if ss_res <= 1e-300 else 0.0
    return 1.0 - ss_res / ss_tot
