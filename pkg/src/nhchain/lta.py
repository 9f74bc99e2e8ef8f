"""Long-time averages: numeric window means, Gram-matrix assembly over the
long-time eigenspace, the analytic operator-entanglement average and the
closed-form averaged-OTOC pair, plus non-resonance diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import propagator
from .opent import Bipartition, permute_state, renyi2_opent
from .spectral import LongTimeEigenspace, SpectralDecomposition

DEFAULT_WINDOW = (50.0, 150.0)
DEFAULT_POINTS = 200
_CHUNK = 64  # eigenstate chunk size for the pairwise reduced-overlap einsums


class NonPositiveError(RuntimeError):
    """A bracket of the analytic average came out nonpositive: conditioning
    breakdown near an exceptional point."""


@dataclass(frozen=True)
class NrcReport:
    full_nrc: bool
    longtime_nrc: bool
    min_gap: float


@dataclass(frozen=True)
class GramMatrices:
    """Long-time Gram matrices of the (reduced) eigenstate projectors.

    R_ij = Tr[rho_i rho_j] over right eigenstates, L_ij over left; the _A/_B
    variants use states reduced to one half of the bipartition, and L_AB uses
    fully traced left states, (L_AB)_ij = Tr[sigma_i] Tr[sigma_j].
    """

    R: np.ndarray
    L: np.ndarray
    R_A: np.ndarray
    L_A: np.ndarray
    R_B: np.ndarray
    L_B: np.ndarray
    L_AB: np.ndarray
    eta_L_trace: float
    n: int


def numeric_lta(f, t_min: float, t_max: float, n_points: int) -> float:
    """Uniform-grid mean of f(t) over [t_min, t_max]."""
    if not t_min < t_max:
        raise ValueError("need t_min < t_max")
    if n_points < 10:
        raise ValueError("need at least 10 grid points")
    ts = np.linspace(t_min, t_max, n_points)
    return float(np.mean([f(t) for t in ts]))


def opent_time_series(spec: SpectralDecomposition, bi: Bipartition, t_grid) -> np.ndarray:
    """E_op(U_t) on a time grid, one propagator build per point."""
    return np.array([renyi2_opent(propagator(spec, t), bi) for t in np.asarray(t_grid)])


def check_nrc(eigenvalues: np.ndarray, longtime=None, tol: float | None = None) -> NrcReport:
    """Non-resonance check: are all pairwise eigenvalue differences distinct?

    `longtime` restricts the weaker check to the long-time index set. The
    reported min_gap is the smallest distance between distinct ordered
    differences of the full spectrum.
    """
    w = np.asarray(eigenvalues)
    if tol is None:
        spread = np.abs(w[None, :] - w[:, None]).max() if len(w) > 1 else 1.0
        tol = 1e-8 * max(1.0, spread)
    full_gap = _min_difference_gap(w)
    full_nrc = full_gap > tol
    if longtime is None:
        longtime = np.arange(len(w))
    lw = w[np.asarray(longtime)]
    lt_gap = _min_difference_gap(lw)
    longtime_nrc = lt_gap > tol
    if full_nrc and not longtime_nrc:   # subset of differences cannot be worse
        longtime_nrc = True
    return NrcReport(full_nrc=bool(full_nrc), longtime_nrc=bool(longtime_nrc),
                     min_gap=float(full_gap))


def _min_difference_gap(w: np.ndarray) -> float:
    """Smallest distance between distinct ordered eigenvalue differences."""
    n = len(w)
    if n < 2:
        return math.inf
    diffs = (w[:, None] - w[None, :])[~np.eye(n, dtype=bool)]
    # Closest-pair sweep on the complex plane, sorted by real part.
    order = np.lexsort((diffs.imag, diffs.real))
    diffs = diffs[order]
    m = len(diffs)
    best = math.inf
    # Widen the neighbor offset until the real-part separation alone rules out
    # every remaining pair; vectorized per offset.
    for k in range(1, m):
        a, b = diffs[:-k], diffs[k:]
        dre = b.real - a.real
        mask = dre < best
        if not mask.any():
            break
        gaps = np.abs(b[mask] - a[mask])
        if gaps.size:
            best = min(best, float(gaps.min()))
    return best


def _pairwise_reduced_overlaps(vecs: np.ndarray, bi: Bipartition) -> tuple[np.ndarray, np.ndarray]:
    """G_A[i,j] = Tr[Tr_B(v_i v_i^dag) Tr_B(v_j v_j^dag)] and the A<->B twin.

    Uses ||M_i^dag M_j||_F^2 on the (d_a, d_b) reshapes, chunked over i.
    """
    n = vecs.shape[1]
    M = np.stack([permute_state(vecs[:, i], bi) for i in range(n)])
    GA = np.zeros((n, n))
    GB = np.zeros((n, n))
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        C = np.einsum("iab,jac->ijbc", M[lo:hi].conj(), M, optimize=True)
        GA[lo:hi] = np.sum(np.abs(C) ** 2, axis=(2, 3))
        D = np.einsum("iab,jcb->ijac", M[lo:hi], M.conj(), optimize=True)
        GB[lo:hi] = np.sum(np.abs(D) ** 2, axis=(2, 3))
    return GA, GB


def gram_matrices(spec: SpectralDecomposition, lte: LongTimeEigenspace,
                  bi: Bipartition) -> GramMatrices:
    """Assemble every Gram matrix entering the analytic averages from the
    long-time right/left eigenvectors."""
    idx = np.asarray(lte.indices)
    r = spec.right_vectors[:, idx]
    l = spec.left_vectors[:, idx]
    R = np.abs(r.conj().T @ r) ** 2
    L = np.abs(l.conj().T @ l) ** 2
    R_A, R_B = _pairwise_reduced_overlaps(r, bi)
    L_A, L_B = _pairwise_reduced_overlaps(l, bi)
    l_norms = np.einsum("ij,ij->j", l.conj(), l).real
    L_AB = np.outer(l_norms, l_norms)
    return GramMatrices(R=R, L=L, R_A=R_A, L_A=L_A, R_B=R_B, L_B=L_B,
                        L_AB=L_AB, eta_L_trace=float(l_norms.sum()), n=len(idx))


def _brackets(g: GramMatrices) -> tuple[float, float, float]:
    num = (np.sum(g.R_A * g.L_A) + np.sum(g.R_B * g.L_B)
           - float(np.dot(np.diagonal(g.R_A), np.diagonal(g.L_A))))
    num_b = (np.sum(g.R_B * g.L_AB) + np.sum(g.R_A * g.L)
             - float(np.dot(np.diagonal(g.R_A), np.diagonal(g.L))))
    den = g.eta_L_trace**2 + np.sum(g.R * g.L) - float(np.trace(g.L))
    return float(num), float(num_b), float(den)


def analytic_opent_lta(spec: SpectralDecomposition, lte: LongTimeEigenspace,
                       bi: Bipartition, grams: GramMatrices | None = None) -> float:
    """Closed-form long-time average of E_op(U_t) under long-time nonresonance:
    -log2 [Tr(R_A L_A)+Tr(R_B L_B)-Tr(diag R_A diag L_A)]
          / [(Tr eta_L)^2 + Tr(R L) - Tr(L)]."""
    g = grams if grams is not None else gram_matrices(spec, lte, bi)
    num, _, den = _brackets(g)
    if num <= 0.0 or den <= 0.0:
        raise NonPositiveError(f"nonpositive bracket (num={num:.3e}, den={den:.3e})")
    return -math.log2(num / den)


def analytic_otoc_lta(spec: SpectralDecomposition, lte: LongTimeEigenspace,
                      bi: Bipartition, grams: GramMatrices | None = None) -> tuple[float, float]:
    """Closed-form pair (linear-E_op average, E_B average) for the Heisenberg
    Haar-averaged OTOC. Shares numerator/denominator pieces with the 2-Renyi
    average; the E_B bracket uses the fully-traced left Gram matrix."""
    g = grams if grams is not None else gram_matrices(spec, lte, bi)
    num, num_b, den = _brackets(g)
    if den <= 0.0:
        raise NonPositiveError(f"nonpositive denominator ({den:.3e})")
    eop_lin = 1.0 - num / den
    e_b = 1.0 - bi.d_b * num_b / den
    return float(eop_lin), float(e_b)


def saturation_value(series: np.ndarray) -> float:
    """Mean over the final third of a time series (declared in run metadata)."""
    series = np.asarray(series)
    return float(series[2 * len(series) // 3:].mean())
