"""Biorthogonal spectral decomposition, long-time eigenspace and parameter
sweeps of the spectrum (degeneracy / exceptional-point detection)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .models import SpinChainParams, Family, build_hamiltonian


class NearDefectiveError(RuntimeError):
    """Biorthonormalization failed to the requested residual: the matrix is too
    close to an exceptional point for a trustworthy eigenbasis."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues with biorthonormalized right/left eigenvectors.

    Columns of `right_vectors` are unit-normalized |r_i>; columns of
    `left_vectors` are the matching |l_i> with <l_i|r_j> = delta_ij (left
    vectors are *not* unit-normalized). `condition` is the largest left-vector
    norm and diverges near exceptional points.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    condition: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class LongTimeEigenspace:
    """Indices of eigenvalues attaining the maximal imaginary part, and the
    restricted metric eta_L = sum |l_i><l_i| over that set."""

    indices: np.ndarray
    eta_L: np.ndarray
    degeneracy: int


def _sort_order(w: np.ndarray) -> np.ndarray:
    # Im descending, then Re ascending; lexsort is stable so ties keep index order.
    return np.lexsort((w.real, -w.imag))


def decompose(H: np.ndarray, residual_tol: float = 1e-6) -> SpectralDecomposition:
    """Diagonalize H into lambda_i, |r_i>, |l_i| with <l_i|r_j> = delta_ij.

    Left vectors come from the inverse-adjoint of the right-eigenvector matrix,
    which enforces biorthonormality by construction; the residual of that
    inversion is the near-defectiveness signal.
    """
    H = np.asarray(H, dtype=complex)
    w, R = scipy.linalg.eig(H)
    order = _sort_order(w)
    w = w[order]
    R = R[:, order]
    R = R / np.linalg.norm(R, axis=0)
    d = len(w)
    # Near an exceptional point the inverse overflows; that is the signal we
    # are detecting, not a numerical accident worth warning about.
    with np.errstate(over="ignore", invalid="ignore"):
        try:
            Rinv = np.linalg.inv(R)
        except np.linalg.LinAlgError as exc:
            raise NearDefectiveError(
                f"right-eigenvector matrix is singular: {exc}") from exc
        residual = np.max(np.abs(Rinv @ R - np.eye(d)))
        # A NaN residual (overflow in the inverse) is defectiveness, not success.
        if not residual < residual_tol:
            raise NearDefectiveError(
                f"biorthonormalization residual {residual:.3e} > {residual_tol:.1e}; "
                "spectrum is too close to an exceptional point")
        left = Rinv.conj().T
        condition = float(np.max(np.linalg.norm(left, axis=0)))
    if not np.isfinite(condition):
        raise NearDefectiveError("left-eigenvector norms overflowed; "
                                 "spectrum is too close to an exceptional point")
    return SpectralDecomposition(eigenvalues=w, right_vectors=R,
                                 left_vectors=left, condition=condition)


def long_time_eigenspace(spec: SpectralDecomposition,
                         tol_im: float | None = None) -> LongTimeEigenspace:
    """Maximal-imaginary-part eigenvalue set; dominates normalized evolution as
    t -> infinity. For a Hermitian matrix this is every index and eta_L = I."""
    im = spec.eigenvalues.imag
    im_max = im.max()
    if tol_im is None:
        tol_im = 1e-8 * max(1.0, abs(im_max))
    indices = np.flatnonzero(im_max - im <= tol_im)
    lvecs = spec.left_vectors[:, indices]
    eta_L = lvecs @ lvecs.conj().T
    return LongTimeEigenspace(indices=indices, eta_L=eta_L, degeneracy=len(indices))


@dataclass
class FlowTable:
    """Branch-matched spectrum along a parameter sweep."""

    parameter: str                     # "gamma" or "beta"
    sweep_values: np.ndarray           # ascending sweep grid
    eigenvalues: np.ndarray            # (n_sweep, d), branch-continuous columns
    near_defective: np.ndarray         # (n_sweep,) bool
    field_names = ("sweep_value", "branch_index", "re", "im", "near_defective_flag")

    def rows(self):
        """CSV rows (sweep_value, branch_index, re, im, near_defective_flag)."""
        for i, v in enumerate(self.sweep_values):
            for b, lam in enumerate(self.eigenvalues[i]):
                yield {"sweep_value": v, "branch_index": b, "re": lam.real,
                       "im": lam.imag, "near_defective_flag": int(self.near_defective[i])}


def _sweep_param(family: Family) -> str:
    return "beta" if family is Family.ISOSPECTRAL else "gamma"


def spectral_flow(params_template: SpinChainParams, sweep: np.ndarray,
                  residual_tol: float = 1e-6) -> FlowTable:
    """Eigenvalues across a gamma (measurement family) or beta (isospectral)
    sweep, with branch continuity via nearest-neighbor matching between
    adjacent sweep points. Near-defective points are flagged, not skipped."""
    sweep = np.asarray(sweep, dtype=float)
    if sweep.size == 0:
        raise ValueError("sweep must be nonempty")
    if np.any(np.diff(sweep) <= 0):
        raise ValueError("sweep must be strictly ascending")
    param = _sweep_param(params_template.family)
    d = params_template.dim
    eigs = np.zeros((len(sweep), d), dtype=complex)
    flags = np.zeros(len(sweep), dtype=bool)
    prev = None
    for i, v in enumerate(sweep):
        p = _with_param(params_template, param, v)
        H = build_hamiltonian(p)
        try:
            dec = decompose(H, residual_tol=residual_tol)
            w = dec.eigenvalues
        except NearDefectiveError:
            flags[i] = True
            w = np.linalg.eigvals(H)
            w = w[_sort_order(w)]
        if prev is not None:
            cost = np.abs(w[None, :] - prev[:, None])
            _, cols = linear_sum_assignment(cost)
            w = w[cols]
        eigs[i] = w
        prev = w
    return FlowTable(parameter=param, sweep_values=sweep, eigenvalues=eigs,
                     near_defective=flags)


def _with_param(params: SpinChainParams, name: str, value: float) -> SpinChainParams:
    from dataclasses import replace
    return replace(params, **{name: float(value)})


@dataclass
class TransitionReport:
    """Locations (to grid resolution) of spectral transitions along a sweep."""

    degenerate_points: list            # sweep values: gap collapse with real spectrum
    exceptional_onsets: list           # (prev_value, value) brackets of new Im branches
    min_gap: np.ndarray = field(default_factory=lambda: np.empty(0))
    complex_branches: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))


def detect_transitions(flow: FlowTable, tol: float = 1e-8) -> TransitionReport:
    """Scan a FlowTable for (i) real-spectrum eigenvalue-gap collapses and
    (ii) onsets of imaginary parts (exceptional-point crossings)."""
    n, d = flow.eigenvalues.shape
    min_gap = np.zeros(n)
    n_complex = np.zeros(n, dtype=int)
    for i in range(n):
        w = flow.eigenvalues[i]
        diff = np.abs(w[None, :] - w[:, None])
        np.fill_diagonal(diff, np.inf)
        min_gap[i] = diff.min()
        n_complex[i] = int(np.sum(np.abs(w.imag) > tol))
    real_spectrum = n_complex == 0

    # Gap-collapse points: local minima of the gap on the real-spectrum part,
    # at least an order of magnitude below the sweep's typical gap.
    degenerate = []
    typical = np.median(min_gap[real_spectrum]) if real_spectrum.any() else 0.0
    for i in range(n):
        if not real_spectrum[i]:
            continue
        left = min_gap[i - 1] if i > 0 else np.inf
        right = min_gap[i + 1] if i < n - 1 else np.inf
        if min_gap[i] <= left and min_gap[i] <= right and min_gap[i] < 0.1 * typical:
            degenerate.append(float(flow.sweep_values[i]))

    onsets = []
    for i in range(1, n):
        if n_complex[i] > n_complex[i - 1]:
            onsets.append((float(flow.sweep_values[i - 1]), float(flow.sweep_values[i])))
    return TransitionReport(degenerate_points=degenerate, exceptional_onsets=onsets,
                            min_gap=min_gap, complex_branches=n_complex)
