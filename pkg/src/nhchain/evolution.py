"""Propagators from a spectral decomposition and normalized non-unitary
evolution of pure and mixed states."""

from __future__ import annotations

import numpy as np

from .spectral import SpectralDecomposition

ZERO_NORM_TOL = 1e-300  # denormal boundary; smaller norms are probability-zero branches


class ZeroNormError(RuntimeError):
    """The propagated state was annihilated: the conditioned trajectory has
    probability zero and cannot be normalized."""


def _phases(spec: SpectralDecomposition, t: float, shift: bool) -> np.ndarray:
    lam = spec.eigenvalues
    if shift:
        # Imaginary shift so max Im = 0: prevents overflow at large t and leaves
        # every normalized observable unchanged.
        lam = lam - 1j * lam.imag.max()
    return np.exp(-1j * t * lam)


def propagator(spec: SpectralDecomposition, t: float, shift: bool = True) -> np.ndarray:
    """U_t = sum_i e^{-it lambda_i} |r_i><l_i|, with the spectrum shifted so
    max Im(lambda) = 0 unless `shift` is disabled."""
    if not np.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    ph = _phases(spec, t, shift)
    return (spec.right_vectors * ph) @ spec.left_vectors.conj().T


def apply_propagator(spec: SpectralDecomposition, t: float, psi: np.ndarray,
                     shift: bool = True) -> np.ndarray:
    """U_t psi without forming U_t (one matvec pair); not normalized."""
    ph = _phases(spec, t, shift)
    return spec.right_vectors @ (ph * (spec.left_vectors.conj().T @ psi))


def evolve_pure(U: np.ndarray, psi0: np.ndarray) -> np.ndarray:
    """Normalized action on a pure state: U psi / ||U psi||."""
    psi = U @ psi0
    nrm = np.linalg.norm(psi)
    if nrm < ZERO_NORM_TOL:
        raise ZeroNormError(f"state annihilated (norm {nrm:.3e})")
    return psi / nrm


def evolve_mixed(U: np.ndarray, rho0: np.ndarray) -> np.ndarray:
    """Trace-normalized action on a mixed state: U rho U^dag / Tr[...]."""
    rho = U @ rho0 @ U.conj().T
    tr = np.trace(rho).real
    if tr < ZERO_NORM_TOL:
        raise ZeroNormError(f"state annihilated (trace {tr:.3e})")
    rho = rho / tr
    # Defensive re-normalization: keep the exposed invariants exact.
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    return rho
