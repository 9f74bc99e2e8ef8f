"""Dense builders for the spin-chain models, the similarity transform and its
stationary state.

Basis convention (enforced repo-wide): computational basis |0...0> ... |1...1>
with site 1 as the most significant bit, so <b|sigma^z_1|b> = +1 iff the most
significant bit of b is 0.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)

DEFAULT_SITE_CAP = 14


class CapacityError(ValueError):
    """Raised when a requested chain exceeds the dense-matrix site cap."""


class Family(str, Enum):
    HERMITIAN = "hermitian"
    MEASUREMENT = "measurement"
    ISOSPECTRAL = "isospectral"


@dataclass(frozen=True)
class SpinChainParams:
    """Model family plus couplings; the single source of Hamiltonian identity.

    gamma is meaningful only for the measurement family and beta only for the
    isospectral family; setting either outside its family is rejected.
    """

    L: int
    J: float
    g: float
    h: float
    gamma: float = 0.0
    beta: float = 0.0
    family: Family = Family.HERMITIAN

    def __post_init__(self):
        if self.L < 1:
            raise ValueError(f"L must be >= 1, got {self.L}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        if self.gamma != 0.0 and self.family is not Family.MEASUREMENT:
            raise ValueError("gamma is only meaningful for the measurement family")
        if self.beta != 0.0 and self.family is not Family.ISOSPECTRAL:
            raise ValueError("beta is only meaningful for the isospectral family")

    @property
    def dim(self) -> int:
        return 2**self.L


# Parameter points used throughout: J fixed, integrable (h=0), chaotic
# (g and h both on) and classical (g=0, diagonal in the z basis).
PRESETS = {
    "integrable": dict(J=0.95, g=1.0, h=0.0),
    "chaotic": dict(J=0.95, g=1.0, h=0.5),
    "classical": dict(J=0.95, g=0.0, h=0.5),
}


def preset(name: str, L: int, family: Family = Family.HERMITIAN,
           gamma: float = 0.0, beta: float = 0.0) -> SpinChainParams:
    """Named parameter point (integrable / chaotic / classical)."""
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return SpinChainParams(L=L, family=family, gamma=gamma, beta=beta, **PRESETS[name])


def _check_cap(L: int, cap: int) -> None:
    if L > cap:
        raise CapacityError(
            f"L={L} exceeds the dense-matrix cap of {cap} sites "
            f"(2^{L} x 2^{L} complex entries); raise `cap` explicitly to override")


def site_operator(op: np.ndarray, site: int, L: int) -> np.ndarray:
    """Embed a single-site operator at `site` (1-based, site 1 = MSB)."""
    if not 1 <= site <= L:
        raise ValueError(f"site {site} out of range 1..{L}")
    out = np.eye(1, dtype=complex)
    for j in range(1, L + 1):
        out = np.kron(out, op if j == site else PAULI_I)
    return out


def _pauli_sum(op: np.ndarray, L: int) -> np.ndarray:
    total = np.zeros((2**L, 2**L), dtype=complex)
    for j in range(1, L + 1):
        total += site_operator(op, j, L)
    return total


def _zz_sum(L: int) -> np.ndarray:
    total = np.zeros((2**L, 2**L), dtype=complex)
    for j in range(1, L):
        total += site_operator(PAULI_Z, j, L) @ site_operator(PAULI_Z, j + 1, L)
    return total


def build_tfim(params: SpinChainParams, cap: int = DEFAULT_SITE_CAP) -> np.ndarray:
    """Transverse-field Ising chain with open boundaries and a longitudinal field."""
    if params.family is not Family.HERMITIAN:
        raise ValueError("build_tfim requires the hermitian family")
    return _build_tfim_terms(params, cap)


def _build_tfim_terms(params: SpinChainParams, cap: int) -> np.ndarray:
    _check_cap(params.L, cap)
    L = params.L
    H = params.J * _zz_sum(L) + params.g * _pauli_sum(PAULI_X, L)
    H += params.h * _pauli_sum(PAULI_Z, L)
    return H


def build_measurement_tfim(params: SpinChainParams, cap: int = DEFAULT_SITE_CAP) -> np.ndarray:
    """TFIM with an imaginary y field of strength gamma (weak measurement with
    postselection). Reduces to the Hermitian chain bitwise at gamma=0."""
    if params.family is not Family.MEASUREMENT:
        raise ValueError("build_measurement_tfim requires the measurement family")
    H = _build_tfim_terms(params, cap)
    H += 1j * params.gamma * _pauli_sum(PAULI_Y, params.L)
    return H


def build_similarity_s(beta: float, L: int, cap: int = DEFAULT_SITE_CAP) -> np.ndarray:
    """Diagonal similarity transform: product over sites of exp(beta sigma^z / 2).

    The basis-state b entry is exp(beta (L - 2 popcount(b)) / 2).
    """
    _check_cap(L, cap)
    b = np.arange(2**L)
    popcount = np.array([bin(x).count("1") for x in b])
    diag = np.exp(beta * (L - 2 * popcount) / 2.0)
    return np.diag(diag.astype(complex))


def build_isospectral_tfim(params: SpinChainParams, cap: int = DEFAULT_SITE_CAP) -> np.ndarray:
    """Similarity-transformed TFIM, built from its expanded ladder-operator form:
    J sum ZZ + h sum Z + g sum (e^beta sigma^+ + e^-beta sigma^-)."""
    if params.family is not Family.ISOSPECTRAL:
        raise ValueError("build_isospectral_tfim requires the isospectral family")
    _check_cap(params.L, cap)
    L, beta = params.L, params.beta
    H = params.J * _zz_sum(L) + params.h * _pauli_sum(PAULI_Z, L)
    ladder = np.exp(beta) * SIGMA_PLUS + np.exp(-beta) * SIGMA_MINUS
    H += params.g * _pauli_sum(ladder, L)
    return H


def build_hamiltonian(params: SpinChainParams, cap: int = DEFAULT_SITE_CAP) -> np.ndarray:
    """Dispatch on the family."""
    if params.family is Family.HERMITIAN:
        return build_tfim(params, cap)
    if params.family is Family.MEASUREMENT:
        return build_measurement_tfim(params, cap)
    return build_isospectral_tfim(params, cap)


def stationary_state(beta: float, L: int, cap: int = DEFAULT_SITE_CAP) -> tuple[np.ndarray, float]:
    """Stationary mixed state of the isospectral chain, S(beta)^2 normalized to
    unit trace, together with its purity computed directly from the matrix."""
    S = build_similarity_s(beta, L, cap)
    rho = S @ S
    rho /= np.trace(rho).real
    purity = float(np.trace(rho @ rho).real)
    return rho, purity


def stationary_purity_closed_form(beta: float, L: int) -> float:
    """Closed form the matrix purity is verified against: ((1+tanh^2 b)/2)^L."""
    return float(((1 + np.tanh(beta) ** 2) / 2) ** L)


def stationary_purity_alternate_form(beta: float, L: int) -> float:
    """Alternate closed form 2^-L (1-tanh^2 b)^L; reported alongside the other
    form by the stationary-check recipe (the two disagree for beta != 0)."""
    return float(2.0**-L * (1 - np.tanh(beta) ** 2) ** L)


def load_params(path) -> SpinChainParams:
    """Read a model preset from a TOML key-value file
    (family, L, J, g, h, gamma, beta; or preset + overrides)."""
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    family = Family(raw.pop("family", "hermitian"))
    if "preset" in raw:
        name = raw.pop("preset")
        base = preset(name, L=raw.pop("L"), family=family,
                      gamma=raw.pop("gamma", 0.0), beta=raw.pop("beta", 0.0))
        return replace(base, **raw) if raw else base
    return SpinChainParams(family=family, **raw)


def save_operator(path, M: np.ndarray) -> None:
    """Text dump: first line is the dimension, then one row per line of
    row-major re/im pairs."""
    M = np.asarray(M, dtype=complex)
    d = M.shape[0]
    with open(path, "w") as fh:
        fh.write(f"{d}\n")
        for row in M:
            fh.write(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row) + "\n")


def load_operator(path) -> np.ndarray:
    with open(path) as fh:
        d = int(fh.readline())
        M = np.zeros((d, d), dtype=complex)
        for i in range(d):
            vals = np.array(fh.readline().split(), dtype=float)
            M[i] = vals[0::2] + 1j * vals[1::2]
    return M
