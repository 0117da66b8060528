"""Histogram-based independence machinery: uniform binning, mutual
information, and Pearson's chi-squared test."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstantVariableError, DegenerateTableError, ValidationError
from .model import TestKind, as_values
from .rng import RngSeed
from .special import chi2_survival


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Binned joint counts with the bin edges they came from."""

    counts: np.ndarray
    row_edges: np.ndarray
    col_edges: np.ndarray
    n: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64).copy()
        row_edges = np.asarray(self.row_edges, dtype=np.float64).copy()
        col_edges = np.asarray(self.col_edges, dtype=np.float64).copy()
        if counts.ndim != 2 or counts.shape[0] < 1 or counts.shape[1] < 1:
            raise ValidationError(f"counts must be a 2-D matrix, got shape {counts.shape}")
        if (counts < 0).any():
            raise ValidationError("counts must be non-negative")
        if counts.sum() != self.n:
            raise ValidationError(f"counts sum to {counts.sum()}, expected n = {self.n}")
        if row_edges.shape != (counts.shape[0] + 1,) or col_edges.shape != (counts.shape[1] + 1,):
            raise ValidationError("edge arrays must have one more entry than bins")
        if (np.diff(row_edges) <= 0).any() or (np.diff(col_edges) <= 0).any():
            raise ValidationError("bin edges must be strictly increasing")
        for arr in (counts, row_edges, col_edges):
            arr.flags.writeable = False
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "row_edges", row_edges)
        object.__setattr__(self, "col_edges", col_edges)

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape  # type: ignore[return-value]


@dataclass(frozen=True)
class TestResult:
    """Outcome of an unconditional independence test."""

    kind: TestKind
    statistic: float
    p_value: float
    df: int | None = None
    grids_evaluated: int | None = None
    permutations: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_value <= 1.0:
            raise ValidationError(f"p-value out of range: {self.p_value}")
        if self.statistic < 0.0:
            raise ValidationError(f"statistic must be non-negative: {self.statistic}")


def _axis_bins(values: np.ndarray, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Bin one axis: equal-width bins over [min, max], except that an axis
    with fewer distinct values than bins gets one bin per distinct value.
    Returns (bin index per point, edges)."""
    distinct = np.unique(values)
    if distinct.shape[0] == 1:
        raise ConstantVariableError("axis is constant; zero range cannot be binned")
    if distinct.shape[0] < bins:
        mids = (distinct[:-1] + distinct[1:]) / 2.0
        edges = np.concatenate(([distinct[0]], mids, [distinct[-1]]))
        idx = np.searchsorted(distinct, values)
        return idx, edges
    edges = np.linspace(values.min(), values.max(), bins + 1)
    # left-closed bins; the max value falls in the last (right-closed) bin
    idx = np.clip(np.searchsorted(edges[1:-1], values, side="right"), 0, bins - 1)
    return idx, edges


def bin_uniform(x, y, bins: int) -> ContingencyTable:
    """Joint counts of (x, y) on a uniform grid (x indexes rows)."""
    xv = as_values(x, "x")
    yv = as_values(y, "y")
    if xv.shape[0] != yv.shape[0]:
        raise ValidationError(f"length mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    if bins < 2:
        raise ValidationError(f"bins must be >= 2, got {bins}")
    ix, row_edges = _axis_bins(xv, bins)
    iy, col_edges = _axis_bins(yv, bins)
    r = row_edges.shape[0] - 1
    c = col_edges.shape[0] - 1
    counts = np.bincount(ix * c + iy, minlength=r * c).reshape(r, c)
    return ContingencyTable(counts=counts, row_edges=row_edges, col_edges=col_edges, n=xv.shape[0])


def mutual_information(table: ContingencyTable) -> float:
    """Mutual information of the binned joint distribution, in nats.

    Sum over non-empty cells of p_ij * ln(p_ij / (p_i p_j)); empty cells
    contribute zero. Accumulated with an exactly rounded sum, so the result
    is identical for a table and its transpose.
    """
    p = table.counts / table.n
    pi = p.sum(axis=1, keepdims=True)
    pj = p.sum(axis=0, keepdims=True)
    mask = p > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(mask, p * np.log(p / (pi * pj)), 0.0)
    return math.fsum(terms[mask])


def chi2_statistic(table: ContingencyTable) -> tuple[float, int]:
    """Pearson's chi-squared statistic and degrees of freedom.

    All-zero rows and columns are dropped first; raises DegenerateTableError
    if fewer than two rows or columns remain (df would be 0).
    """
    counts = table.counts
    counts = counts[counts.sum(axis=1) > 0][:, counts.sum(axis=0) > 0]
    r, c = counts.shape
    if r <= 1 or c <= 1:
        raise DegenerateTableError(f"table degenerates to {r}x{c}; no test possible")
    expected = np.outer(counts.sum(axis=1), counts.sum(axis=0)) / counts.sum()
    stat = float((((counts - expected) ** 2) / expected).sum())
    return stat, (r - 1) * (c - 1)


def chi2_pvalue(statistic: float, df: int) -> float:
    """Upper-tail probability of the chi-squared distribution.

    df = 0 returns 1.0 by convention: a degenerate table carries no evidence.
    """
    if statistic < 0.0:
        raise ValidationError(f"statistic must be non-negative, got {statistic}")
    if df < 0:
        raise ValidationError(f"df must be non-negative, got {df}")
    if df == 0:
        return 1.0
    return chi2_survival(statistic, df)


def chi2_test(x, y, bins: int = 10, seed: RngSeed = 0) -> TestResult:
    """Chi-squared independence test on uniformly binned data.

    The test is deterministic; `seed` is accepted for interface uniformity
    with the permutation-based test and is unused.
    """
    del seed
    table = bin_uniform(x, y, bins)
    stat, df = chi2_statistic(table)
    return TestResult(kind=TestKind.CHI2, statistic=stat, p_value=chi2_pvalue(stat, df), df=df)
