"""Random-matrix comparison ensembles."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class EnsembleKind(str, Enum):
    GUE = "gue"
    GINIBRE = "ginibre"


@dataclass(frozen=True)
class RandomEnsemble:
    kind: EnsembleKind
    dim: int
    seed: int


def sample_ensemble(ens: RandomEnsemble) -> np.ndarray:
    """One draw; deterministic per seed.

    Variance convention: entries of the base matrix A are standard complex
    Gaussians, (x + iy)/sqrt(2) with x, y ~ N(0, 1). GUE returns (A + A^dag)/2,
    Ginibre returns A itself.
    """
    if ens.dim < 2:
        raise ValueError("ensemble dimension must be >= 2")
    rng = np.random.default_rng(ens.seed)
    A = (rng.standard_normal((ens.dim, ens.dim))
         + 1j * rng.standard_normal((ens.dim, ens.dim))) / np.sqrt(2)
    if ens.kind is EnsembleKind.GUE:
        return (A + A.conj().T) / 2
    return A
