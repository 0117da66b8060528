"""Synthetic generator for the four pairwise causal structures.

One latent noise triple (Z, X_ind, Y_ind), all i.i.d. Uniform(0, 1), drives
every structure built from a given seed, so the four structures are paired:

    causal       (X_ind, X_ind + Z)
    anticausal   (X_ind + Z, X_ind)
    independent  (X_ind, Y_ind)
    confounded   (X_ind + Z, Y_ind + Z)

Uniform noise keeps the linear model identifiable; with Gaussian noise the
direction would not be recoverable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .indep import bin_uniform, mutual_information
from .model import Structure
from .regress import ols_fit
from .rng import RngSeed, derive, generator

StructureKind = Structure

_STREAM_Z = 0
_STREAM_X = 1
_STREAM_Y = 2


@dataclass(frozen=True, eq=False)
class SynthSample:
    """A generated pair with its ground-truth structure."""

    x: np.ndarray
    y: np.ndarray
    truth: Structure
    n: int
    seed: RngSeed

    def __post_init__(self) -> None:
        for name in ("x", "y"):
            arr = np.asarray(getattr(self, name), dtype=np.float64).copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.x.shape[0] != self.n or self.y.shape[0] != self.n:
            raise ValidationError("sample arrays must have length n")


def generate_structure(kind: Structure, n: int, seed: RngSeed) -> SynthSample:
    """Draw one sample of the given structure. Deterministic given seed."""
    if n < 10:
        raise ValidationError(f"n must be >= 10, got {n}")
    z = generator(derive(seed, _STREAM_Z)).random(n)
    x_ind = generator(derive(seed, _STREAM_X)).random(n)
    y_ind = generator(derive(seed, _STREAM_Y)).random(n)
    y_dep = x_ind + z
    if kind is Structure.CAUSAL:
        x, y = x_ind, y_dep
    elif kind is Structure.ANTICAUSAL:
        x, y = y_dep, x_ind
    elif kind is Structure.INDEPENDENT:
        x, y = x_ind, y_ind
    elif kind is Structure.CONFOUNDED:
        x, y = x_ind + z, y_ind + z
    else:
        raise ValidationError(f"unknown structure kind: {kind!r}")
    return SynthSample(x=x, y=y, truth=kind, n=n, seed=seed)


def mi_distribution(
    kind: Structure,
    replicates: int,
    n: int = 1000,
    bins: int = 10,
    seed: RngSeed = 0,
) -> np.ndarray:
    """Mutual information between fit residual and x, one value per replicate.

    Replicate i uses the substream (seed, i) regardless of kind, so the
    distributions for different kinds are paired draw-by-draw.
    """
    if replicates < 1:
        raise ValidationError(f"replicates must be >= 1, got {replicates}")
    out = np.empty(replicates)
    for i in range(replicates):
        sample = generate_structure(kind, n, derive(seed, i))
        fit = ols_fit(sample.x, sample.y)
        table = bin_uniform(fit.residuals, sample.x, bins)
        out[i] = mutual_information(table)
    return out
