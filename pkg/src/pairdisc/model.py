"""Core data model: observation series, variable typing, and test selection."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ValidationError

#: Hard ceiling on how many distinct integer levels still count as categorical.
MAX_CATEGORICAL_LEVELS = 20


class VarType(enum.Enum):
    CATEGORICAL = "categorical"
    BINARY = "binary"
    NUMERICAL = "numerical"


class PairType(enum.Enum):
    CATEGORICAL = "categorical"
    BINARY = "binary"
    NUMERICAL = "numerical"
    MIXED = "mixed"


class TestKind(enum.Enum):
    CHI2 = "chi2"
    TIC = "tic"


class Structure(enum.Enum):
    """The four pairwise structures: X->Y, Y->X, X independent of Y, and a
    latent common cause."""

    CAUSAL = "causal"
    ANTICAUSAL = "anticausal"
    INDEPENDENT = "independent"
    CONFOUNDED = "confounded"


#: Per-pair-type default test: the empirically strongest test for each stratum.
DEFAULT_TEST_POLICY: Mapping[PairType, TestKind] = {
    PairType.CATEGORICAL: TestKind.TIC,
    PairType.BINARY: TestKind.TIC,
    PairType.NUMERICAL: TestKind.CHI2,
    PairType.MIXED: TestKind.CHI2,
}


def as_values(values: Sequence[float] | np.ndarray, name: str = "values") -> np.ndarray:
    """Validate and freeze a 1-D float array: length >= 2, all finite."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValidationError(f"{name} needs at least 2 observations, got {arr.shape[0]}")
    if not np.isfinite(arr).all():
        raise ValidationError(f"{name} contains non-finite values")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ObservationSeries:
    """A named sequence of real-valued observations (length >= 2, finite)."""

    values: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", as_values(self.values, self.name or "series"))

    def __len__(self) -> int:
        return int(self.values.shape[0])


def infer_var_type(series: ObservationSeries | np.ndarray) -> VarType:
    """Classify a series as binary, categorical, or numerical.

    Binary: exactly two distinct values. Categorical: integer-valued with at
    most min(20, ceil(n/10)) distinct levels, so short series are never read
    as categorical and coarsely quantized continuous data stays numerical.
    Everything else is numerical.
    """
    values = series.values if isinstance(series, ObservationSeries) else as_values(series)
    n = values.shape[0]
    distinct = np.unique(values)
    if distinct.shape[0] == 2:
        return VarType.BINARY
    limit = min(MAX_CATEGORICAL_LEVELS, math.ceil(n / 10))
    if distinct.shape[0] <= limit and np.all(distinct == np.floor(distinct)):
        return VarType.CATEGORICAL
    return VarType.NUMERICAL


def infer_pair_type(a_type: VarType, b_type: VarType) -> PairType:
    """Joint type of a pair; symmetric in its arguments."""
    numeric = (a_type is VarType.NUMERICAL) + (b_type is VarType.NUMERICAL)
    if numeric == 2:
        return PairType.NUMERICAL
    if numeric == 1:
        return PairType.MIXED
    if a_type is VarType.BINARY and b_type is VarType.BINARY:
        return PairType.BINARY
    return PairType.CATEGORICAL


def select_test(
    pair_type: PairType,
    policy: Mapping[PairType, TestKind] | None = None,
) -> TestKind:
    """Pick the independence test for a pair type, honoring a policy override."""
    if policy is not None and pair_type in policy:
        return policy[pair_type]
    return DEFAULT_TEST_POLICY[pair_type]


@dataclass(frozen=True, eq=False)
class VariablePair:
    """Two aligned observation series plus their joint type."""

    a: ObservationSeries
    b: ObservationSeries
    pair_type: PairType = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValidationError(
                f"series lengths differ: {len(self.a)} vs {len(self.b)}"
            )
        if self.pair_type is None:
            inferred = infer_pair_type(infer_var_type(self.a), infer_var_type(self.b))
            object.__setattr__(self, "pair_type", inferred)

    @property
    def n(self) -> int:
        return len(self.a)


def variable_pair(
    a: Sequence[float] | np.ndarray,
    b: Sequence[float] | np.ndarray,
    name_a: str = "A",
    name_b: str = "B",
) -> VariablePair:
    """Build a VariablePair from raw sequences, inferring the joint type."""
    return VariablePair(ObservationSeries(a, name_a), ObservationSeries(b, name_b))
