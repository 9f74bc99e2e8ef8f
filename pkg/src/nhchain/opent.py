"""Operator Schmidt decomposition and entanglement functionals: 2-Renyi and
linear operator entanglement, plus subsystem entropies of pure states.

All logarithms are base two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SCHMIDT_RANK_CUT = 1e-12     # relative cutoff defining the numerical Schmidt rank
ENTROPY_EIG_CLIP = 1e-14     # reduced-density eigenvalues below this count as 0


class ZeroOperatorError(ValueError):
    """Operator entanglement is undefined for the zero operator."""


@dataclass(frozen=True)
class Bipartition:
    """A|B split of the qubit chain; sites are 1-based, site 1 = MSB."""

    sites_a: tuple
    L: int

    def __post_init__(self):
        sa = tuple(self.sites_a)
        if len(set(sa)) != len(sa) or not all(1 <= s <= self.L for s in sa):
            raise ValueError(f"invalid A sites {sa} for L={self.L}")
        if not 0 < len(sa) < self.L:
            raise ValueError("both halves of a bipartition must be nonempty")
        object.__setattr__(self, "sites_a", sa)

    @classmethod
    def half_cut(cls, L: int) -> "Bipartition":
        """Contiguous leftmost ceil(L/2) | floor(L/2) split."""
        return cls(tuple(range(1, (L + 1) // 2 + 1)), L)

    @classmethod
    def leftmost(cls, n: int, L: int) -> "Bipartition":
        return cls(tuple(range(1, n + 1)), L)

    @property
    def sites_b(self) -> tuple:
        in_a = set(self.sites_a)
        return tuple(s for s in range(1, self.L + 1) if s not in in_a)

    @property
    def d_a(self) -> int:
        return 2 ** len(self.sites_a)

    @property
    def d_b(self) -> int:
        return 2 ** (self.L - len(self.sites_a))

    def swapped(self) -> "Bipartition":
        return Bipartition(self.sites_b, self.L)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Nonincreasing operator Schmidt coefficients (squared singular values of
    the realigned operator) and the numerical rank."""

    coefficients: np.ndarray
    rank: int

    @property
    def total(self) -> float:
        return float(self.coefficients.sum())


def _site_axes(bi: Bipartition) -> tuple[list, list]:
    a = [s - 1 for s in bi.sites_a]
    b = [s - 1 for s in bi.sites_b]
    return a, b


def permute_state(psi: np.ndarray, bi: Bipartition) -> np.ndarray:
    """Reshape a state vector into a (d_a, d_b) matrix for the bipartition."""
    a, b = _site_axes(bi)
    T = np.asarray(psi).reshape((2,) * bi.L)
    return T.transpose(a + b).reshape(bi.d_a, bi.d_b)


def realign(X: np.ndarray, bi: Bipartition) -> np.ndarray:
    """Index regrouping (A,B; A',B') -> (A,A'; B,B') as a d_a^2 x d_b^2 matrix."""
    L = bi.L
    if X.shape != (2**L, 2**L):
        raise ValueError(f"operator shape {X.shape} inconsistent with L={L}")
    a, b = _site_axes(bi)
    T = np.asarray(X).reshape((2,) * (2 * L))
    ket = a + b                       # axes 0..L-1 are the ket sites
    bra = [L + ax for ax in a + b]    # axes L..2L-1 are the bra sites
    n_a = len(a)
    order = ket[:n_a] + bra[:n_a] + ket[n_a:] + bra[n_a:]
    return T.transpose(order).reshape(bi.d_a**2, bi.d_b**2)


def operator_schmidt(X: np.ndarray, bi: Bipartition) -> SchmidtSpectrum:
    """Operator Schmidt coefficients across A|B: squared singular values of the
    realignment of X, in nonincreasing order."""
    sv = np.linalg.svd(realign(X, bi), compute_uv=False)
    lam = sv**2
    rank = int(np.sum(lam > SCHMIDT_RANK_CUT * lam[0])) if lam.size and lam[0] > 0 else 0
    return SchmidtSpectrum(coefficients=lam, rank=rank)


def _schmidt_purity(X: np.ndarray, bi: Bipartition) -> float:
    lam = operator_schmidt(X, bi).coefficients
    total = lam.sum()
    if total <= 0.0:
        raise ZeroOperatorError("operator has zero Hilbert-Schmidt norm")
    return float(np.sum(lam**2) / total**2)


def renyi2_opent(X: np.ndarray, bi: Bipartition) -> float:
    """2-Renyi operator entanglement: -log2 of the purity of the normalized
    operator Schmidt coefficient vector."""
    return -math.log2(_schmidt_purity(X, bi))


def linear_opent(X: np.ndarray, bi: Bipartition) -> float:
    """Linear operator entanglement 1 - sum(lam^2)/(sum lam)^2; equals
    1 - 2^-E_op by construction."""
    return 1.0 - _schmidt_purity(X, bi)


def reduced_density(psi: np.ndarray, sites, L: int | None = None) -> np.ndarray:
    """Reduced density matrix of a pure state over `sites` (1-based)."""
    psi = np.asarray(psi)
    if L is None:
        L = psi.size.bit_length() - 1
    M = permute_state(psi, Bipartition(tuple(sites), L))
    return M @ M.conj().T


def subsystem_entropy(psi: np.ndarray, sites, L: int | None = None) -> float:
    """Von Neumann entropy (base 2) of the reduced state over `sites`."""
    rho = reduced_density(psi, sites, L)
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > ENTROPY_EIG_CLIP]
    return float(-np.sum(evals * np.log2(evals)))


def partial_trace(M: np.ndarray, keep_sites, L: int | None = None) -> np.ndarray:
    """Trace a d x d operator down to the `keep_sites` subsystem."""
    M = np.asarray(M)
    if L is None:
        L = M.shape[0].bit_length() - 1
    keep = [s - 1 for s in keep_sites]
    drop = [ax for ax in range(L) if ax not in set(keep)]
    T = M.reshape((2,) * (2 * L))
    # Trace matching ket/bra axes for each dropped site, back to front.
    for ax in sorted(drop, reverse=True):
        n_sites = T.ndim // 2
        T = np.trace(T, axis1=ax, axis2=n_sites + ax)
    # Remaining axes are the kept sites in ascending site order; permute to the
    # caller's requested order.
    n_keep = len(keep)
    rank = {site: i for i, site in enumerate(sorted(keep))}
    order = [rank[s] for s in keep]
    T = T.transpose(order + [n_keep + i for i in order])
    dk = 2**n_keep
    return T.reshape(dk, dk)
