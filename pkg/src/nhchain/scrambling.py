"""OTOC variants: the state-normalized OTOC, lightcone scans, Haar-sampled
bipartite averages and the closed-form Heisenberg-picture average."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import PAULI_I, SpinChainParams, build_hamiltonian
from .opent import Bipartition, ZeroOperatorError, linear_opent, partial_trace
from .spectral import decompose
from .evolution import propagator

DROP_TOL = 1e-300  # below this norm a basis-state branch is a zero-probability postselection


@dataclass(frozen=True)
class LocalObservable:
    """A single-site operator, embedded as identity elsewhere."""

    site: int
    matrix: np.ndarray
    label: str = ""

    def embed(self, L: int) -> np.ndarray:
        if not 1 <= self.site <= L:
            raise ValueError(f"site {self.site} out of range 1..{L}")
        out = np.eye(1, dtype=complex)
        for j in range(1, L + 1):
            out = np.kron(out, self.matrix if j == self.site else PAULI_I)
        return out


@dataclass(frozen=True)
class HaarSampleReport:
    mean: float
    stderr: float
    n_samples: int
    seed: int

    def as_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr,
                "n": self.n_samples, "seed": self.seed}


def otoc_normalized_report(U: np.ndarray, V: np.ndarray, W: np.ndarray) -> tuple[float, int]:
    """Normalized OTOC plus the count of dropped (annihilated) basis terms.

    Per basis state j, with W_t = U^dag W U:
      (1/d) sum_j [ ||V W_t|j>||^2 / ||W_t|j>||^2
                    - Re <j|W_t^dag V^dag W_t V|j> / (||W_t|j>|| ||W_t V|j>||) ].
    Terms whose denominators vanish are excluded from the sum and counted.
    """
    d = U.shape[0]
    Wt = U.conj().T @ W @ U
    VWt = V @ Wt           # columns V W_t |j>
    WtV = Wt @ V           # columns W_t V |j>
    n1 = np.linalg.norm(Wt, axis=0)    # ||W_t|j>||
    n2 = np.linalg.norm(WtV, axis=0)   # ||W_t V|j>||
    keep = (n1 >= DROP_TOL) & (n2 >= DROP_TOL)
    dropped = int(d - keep.sum())
    t1 = np.einsum("ij,ij->j", VWt.conj(), VWt).real[keep] / n1[keep] ** 2
    cross = np.einsum("ij,ij->j", VWt.conj(), WtV).real[keep]
    t2 = cross / (n1[keep] * n2[keep])
    return float(np.sum(t1 - t2) / d), dropped


def otoc_normalized(U: np.ndarray, V: np.ndarray, W: np.ndarray) -> float:
    value, _ = otoc_normalized_report(U, V, W)
    return value


@dataclass
class LightconeScan:
    """Normalized OTOC values over (W-site, t) with V fixed mid-chain."""

    v_site: int
    sites: np.ndarray
    t_grid: np.ndarray
    values: np.ndarray          # (n_sites, n_t)
    dropped: np.ndarray         # (n_sites, n_t) int

    def onset_times(self, threshold: float = 0.1) -> np.ndarray:
        """First t with value > threshold per site (nan if never crossed)."""
        out = np.full(len(self.sites), np.nan)
        for i in range(len(self.sites)):
            hits = np.flatnonzero(self.values[i] > threshold)
            if hits.size:
                out[i] = self.t_grid[hits[0]]
        return out

    def rows(self):
        for i, s in enumerate(self.sites):
            for k, t in enumerate(self.t_grid):
                yield {"site": int(s), "t": t, "value": self.values[i, k],
                       "dropped_terms": int(self.dropped[i, k])}


def otoc_lightcone(params: SpinChainParams, v_site: int, t_grid) -> LightconeScan:
    """V = W = sigma^z scan: V fixed at `v_site`, W swept across the chain."""
    t_grid = np.asarray(t_grid, dtype=float)
    L = params.L
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    V = LocalObservable(v_site, sz, "sz").embed(L)
    Ws = [LocalObservable(s, sz, "sz").embed(L) for s in range(1, L + 1)]
    spec = decompose(build_hamiltonian(params))
    values = np.zeros((L, len(t_grid)))
    dropped = np.zeros((L, len(t_grid)), dtype=int)
    for k, t in enumerate(t_grid):
        U = propagator(spec, t)
        for i, W in enumerate(Ws):
            values[i, k], dropped[i, k] = otoc_normalized_report(U, V, W)
    return LightconeScan(v_site=v_site, sites=np.arange(1, L + 1),
                         t_grid=t_grid, values=values, dropped=dropped)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian with phase fix."""
    A = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(A)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def embed_on_partition(op: np.ndarray, bi: Bipartition, side: str) -> np.ndarray:
    """op acting on the A (or B) sites of the bipartition, identity elsewhere."""
    L = bi.L
    if side == "A":
        block = np.kron(op, np.eye(bi.d_b))
    elif side == "B":
        block = np.kron(np.eye(bi.d_a), op)
    else:
        raise ValueError("side must be 'A' or 'B'")
    # `block` lives in the (A sites, B sites) ordering; permute back to chain order.
    a = [s - 1 for s in bi.sites_a]
    b = [s - 1 for s in bi.sites_b]
    perm = a + b
    inv = np.argsort(perm)
    T = block.reshape((2,) * (2 * L))
    order = list(inv) + [L + int(ax) for ax in inv]
    return T.transpose(order).reshape(2**L, 2**L)


def haar_bipartite_otoc(U: np.ndarray, bi: Bipartition, n: int, seed: int) -> HaarSampleReport:
    """Mean/stderr of the normalized OTOC over n pairs (V_A, W_B) of Haar-random
    subsystem unitaries; deterministic for a fixed seed."""
    if n < 2:
        raise ValueError("need at least 2 samples for a standard error")
    children = np.random.SeedSequence(seed).spawn(n)
    samples = np.zeros(n)
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        VA = embed_on_partition(haar_unitary(bi.d_a, rng), bi, "A")
        WB = embed_on_partition(haar_unitary(bi.d_b, rng), bi, "B")
        samples[i] = otoc_normalized(U, VA, WB)
    mean = float(samples.mean())
    stderr = float(samples.std(ddof=1) / np.sqrt(n))
    return HaarSampleReport(mean=mean, stderr=stderr, n_samples=n, seed=seed)


def subsystem_linear_entropy(U: np.ndarray, bi: Bipartition) -> float:
    """Linear entanglement entropy of the positive part U U^dag on the B side:
    1 - d_B Tr[Tr_A(U U^dag)^2] / ||U||_2^4. Zero whenever U is unitary."""
    nrm4 = np.einsum("ij,ij->", U.conj(), U).real ** 2
    if nrm4 <= 0.0:
        raise ZeroOperatorError("operator has zero Hilbert-Schmidt norm")
    P = U @ U.conj().T
    PB = partial_trace(P, bi.sites_b, bi.L)
    return float(1.0 - bi.d_b * np.trace(PB @ PB).real / nrm4)


def heisenberg_haar_otoc(U: np.ndarray, bi: Bipartition) -> float:
    """Closed-form Haar average of the Heisenberg-picture normalized OTOC at the
    maximally mixed state: linear operator entanglement minus the B-side linear
    entropy of U U^dag. No sampling involved."""
    return linear_opent(U, bi) - subsystem_linear_entropy(U, bi)
