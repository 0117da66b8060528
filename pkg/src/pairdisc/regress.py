"""Ordinary least squares with intercept, and residual extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRegressorError, ValidationError
from .model import as_values


@dataclass(frozen=True, eq=False)
class LinearFit:
    """A univariate least-squares fit. Residuals have mean zero and zero
    sample correlation with the regressor (up to floating-point conditioning)."""

    slope: float
    intercept: float
    residuals: np.ndarray

    def __post_init__(self) -> None:
        res = np.asarray(self.residuals, dtype=np.float64).copy()
        res.flags.writeable = False
        object.__setattr__(self, "residuals", res)


def ols_fit(cause, effect) -> LinearFit:
    """Fit effect = slope * cause + intercept and return the fit.

    Raises DegenerateRegressorError when the cause is constant: a constant
    carries no dependence and the caller decides what that means.
    """
    x = as_values(cause, "cause")
    y = as_values(effect, "effect")
    if x.shape[0] != y.shape[0]:
        raise ValidationError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 3:
        raise ValidationError(f"need at least 3 observations, got {x.shape[0]}")
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    var = float(dx @ dx)
    if var == 0.0:
        raise DegenerateRegressorError("cause is constant; slope undefined")
    slope = float(dx @ (y - ym)) / var
    intercept = ym - slope * xm
    residuals = y - slope * x - intercept
    return LinearFit(slope=slope, intercept=float(intercept), residuals=residuals)
