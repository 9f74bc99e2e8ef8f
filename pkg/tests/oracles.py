"""Independent oracle implementations for cross-checking the package.

Everything here deliberately avoids the package's own code paths: Hamiltonians
are built by bit twiddling instead of Kronecker products, propagators come from
scipy's expm, operator entanglement from a direct four-tensor contraction
instead of realignment + SVD, and Haar averages from scipy's unitary sampler.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group


def _z(bits: int, site: int, L: int) -> int:
    """sigma^z eigenvalue of basis state `bits` at 1-based `site` (site 1 = MSB)."""
    return 1 if (bits >> (L - site)) & 1 == 0 else -1


def bitwise_hamiltonian(L, J, g, h, gamma=0.0, beta=0.0, family="hermitian") -> np.ndarray:
    """Spin-chain Hamiltonian assembled state by state, no Kronecker products.

    hermitian:    J sum z z + g sum x + h sum z
    measurement:  + i gamma sum y
    isospectral:  J sum z z + h sum z + g sum (e^beta s+ + e^-beta s-)
    """
    d = 2**L
    H = np.zeros((d, d), dtype=complex)
    for b in range(d):
        diag = h * sum(_z(b, j, L) for j in range(1, L + 1))
        diag += J * sum(_z(b, j, L) * _z(b, j + 1, L) for j in range(1, L))
        H[b, b] += diag
        for j in range(1, L + 1):
            flipped = b ^ (1 << (L - j))
            if family == "hermitian":
                H[flipped, b] += g
            elif family == "measurement":
                H[flipped, b] += g
                # sigma^y |0> = i|1>, sigma^y |1> = -i|0>; bit set means |1>.
                H[flipped, b] += 1j * gamma * (1j if _z(b, j, L) == 1 else -1j)
            elif family == "isospectral":
                # sigma^+ lowers the bit (|1> -> |0>), sigma^- raises it.
                H[flipped, b] += g * (np.exp(beta) if _z(b, j, L) == -1 else np.exp(-beta))
            else:
                raise ValueError(family)
    return H


def expm_propagator(H: np.ndarray, t: float) -> np.ndarray:
    return scipy.linalg.expm(-1j * t * np.asarray(H, dtype=complex))


def _to_ab_tensor(X: np.ndarray, sites_a, L: int) -> np.ndarray:
    """<a b| X |a' b'> as a (d_a, d_b, d_a, d_b) tensor, A sites grouped first."""
    a = [s - 1 for s in sites_a]
    b = [ax for ax in range(L) if ax not in set(a)]
    T = np.asarray(X).reshape((2,) * (2 * L))
    order = a + b + [L + ax for ax in a + b]
    T = T.transpose(order)
    d_a, d_b = 2 ** len(a), 2 ** len(b)
    return T.reshape(d_a, d_b, d_a, d_b)


def contraction_opent(X: np.ndarray, sites_a, L: int) -> float:
    """2-Renyi operator entanglement via the swap-operator contraction
    Tr[rho_A^2] of the vectorized operator, no realignment and no SVD."""
    T = _to_ab_tensor(X, sites_a, L)
    total = float(np.einsum("abcd,abcd->", T, T.conj()).real)
    purity = np.einsum("abcd,ebgd,efgh,afch->", T, T.conj(), T, T.conj(),
                       optimize=True).real
    return float(-np.log2(purity / total**2))


def partial_trace_loops(M: np.ndarray, keep_sites, L: int) -> np.ndarray:
    """Reduced operator over `keep_sites` by explicit summation over the rest."""
    keep = list(keep_sites)
    drop = [s for s in range(1, L + 1) if s not in set(keep)]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)
    shifts_keep = [L - s for s in keep]
    shifts_drop = [L - s for s in drop]
    for r in range(dk):
        for c in range(dk):
            for e in range(2 ** len(drop)):
                row = col = 0
                for i, sh in enumerate(shifts_keep):
                    row |= ((r >> (len(keep) - 1 - i)) & 1) << sh
                    col |= ((c >> (len(keep) - 1 - i)) & 1) << sh
                for i, sh in enumerate(shifts_drop):
                    bit = ((e >> (len(drop) - 1 - i)) & 1) << sh
                    row |= bit
                    col |= bit
                out[r, c] += M[row, col]
    return out


def otoc_columns(U: np.ndarray, V: np.ndarray, W: np.ndarray) -> float:
    """Normalized OTOC by an explicit loop over basis columns (no batching)."""
    d = U.shape[0]
    M = U.conj().T @ W @ U
    acc = 0.0
    for j in range(d):
        mj = M[:, j]
        mvj = M @ V[:, j]
        n1, n2 = np.linalg.norm(mj), np.linalg.norm(mvj)
        if n1 == 0.0 or n2 == 0.0:
            continue
        acc += float(np.vdot(V @ mj, V @ mj).real) / n1**2
        acc -= float(np.vdot(V @ mj, mvj).real) / (n1 * n2)
    return acc / d


def haar_otoc_montecarlo(U: np.ndarray, d_a: int, d_b: int, n: int,
                         seed: int) -> tuple[float, float]:
    """Mean/stderr of the normalized OTOC over scipy-sampled Haar pairs
    (V on the leading factor, W on the trailing one). Contiguous split only."""
    rng = np.random.default_rng(seed)
    samples = np.zeros(n)
    for i in range(n):
        V = np.kron(unitary_group.rvs(d_a, random_state=rng), np.eye(d_b))
        W = np.kron(np.eye(d_a), unitary_group.rvs(d_b, random_state=rng))
        samples[i] = otoc_columns(U, V, W)
    return float(samples.mean()), float(samples.std(ddof=1) / np.sqrt(n))


def heisenberg_otoc(U: np.ndarray, V: np.ndarray, W: np.ndarray) -> float:
    """Heisenberg-evolved OTOC at the maximally mixed state:
    d [||V M||_F^2 - Re Tr(M^dag V^dag M V)] / ||U||_F^4 with M = U^dag W U."""
    d = U.shape[0]
    M = U.conj().T @ W @ U
    num = np.linalg.norm(V @ M) ** 2 - np.trace(M.conj().T @ V.conj().T @ M @ V).real
    return float(d * num / np.linalg.norm(U) ** 4)


def haar_heisenberg_otoc_mc(U: np.ndarray, d_a: int, d_b: int, n: int,
                            seed: int) -> tuple[float, float]:
    """Mean/stderr of the Heisenberg-evolved OTOC over scipy-sampled Haar pairs."""
    rng = np.random.default_rng(seed)
    samples = np.zeros(n)
    for i in range(n):
        V = np.kron(unitary_group.rvs(d_a, random_state=rng), np.eye(d_b))
        W = np.kron(np.eye(d_a), unitary_group.rvs(d_b, random_state=rng))
        samples[i] = heisenberg_otoc(U, V, W)
    return float(samples.mean()), float(samples.std(ddof=1) / np.sqrt(n))


def single_site_eigenvalues(g: float, h: float, gamma: float) -> np.ndarray:
    """Spectrum of g x + h z + i gamma y: +-sqrt(g^2 + h^2 - gamma^2)."""
    root = np.sqrt(complex(g**2 + h**2 - gamma**2))
    return np.array([root, -root])


def min_difference_gap_brute(w: np.ndarray) -> float:
    """O(m^2) closest pair over all ordered eigenvalue differences."""
    diffs = []
    n = len(w)
    for i in range(n):
        for j in range(n):
            if i != j:
                diffs.append(w[i] - w[j])
    best = np.inf
    for i in range(len(diffs)):
        for j in range(i + 1, len(diffs)):
            best = min(best, abs(diffs[i] - diffs[j]))
    return float(best)
