import numpy as np
import pytest

import oracles
from nhchain.models import (CapacityError, Family, PAULI_Z, SpinChainParams,
                            build_hamiltonian, build_isospectral_tfim,
                            build_measurement_tfim, build_similarity_s, build_tfim,
                            load_operator, load_params, preset, save_operator,
                            site_operator, stationary_purity_alternate_form,
                            stationary_purity_closed_form, stationary_state)


def test_basis_convention_site_one_is_msb():
    # <b|sigma^z_1|b> = +1 exactly when the most significant bit of b is 0.
    L = 3
    Z1 = site_operator(PAULI_Z, 1, L)
    diag = np.real(np.diagonal(Z1))
    for b in range(2**L):
        expected = 1.0 if (b >> (L - 1)) & 1 == 0 else -1.0
        assert diag[b] == expected


@pytest.mark.parametrize("family,extra", [
    (Family.HERMITIAN, {}),
    (Family.MEASUREMENT, {"gamma": 0.7}),
    (Family.ISOSPECTRAL, {"beta": 0.9}),
])
def test_builders_match_bitwise_oracle(family, extra):
    p = SpinChainParams(L=5, J=0.95, g=1.0, h=0.5, family=family, **extra)
    H = build_hamiltonian(p)
    H_oracle = oracles.bitwise_hamiltonian(
        5, 0.95, 1.0, 0.5, gamma=extra.get("gamma", 0.0),
        beta=extra.get("beta", 0.0), family=family.value)
    assert np.max(np.abs(H - H_oracle)) < 1e-13


def test_tfim_is_hermitian_and_measurement_is_not():
    H = build_tfim(preset("chaotic", 4))
    assert np.allclose(H, H.conj().T)
    Hm = build_measurement_tfim(SpinChainParams(
        L=4, J=0.95, g=1.0, h=0.5, gamma=0.3, family=Family.MEASUREMENT))
    assert not np.allclose(Hm, Hm.conj().T)


def test_measurement_reduces_to_hermitian_at_zero_gamma():
    pm = SpinChainParams(L=4, J=0.95, g=1.0, h=0.5, gamma=0.0, family=Family.MEASUREMENT)
    ph = SpinChainParams(L=4, J=0.95, g=1.0, h=0.5)
    assert np.array_equal(build_measurement_tfim(pm), build_tfim(ph))


def test_isospectral_equals_conjugated_tfim():
    beta, L = 0.8, 5
    pi = preset("chaotic", L, family=Family.ISOSPECTRAL, beta=beta)
    S = build_similarity_s(beta, L)
    H0 = build_tfim(preset("chaotic", L))
    conjugated = S @ H0 @ np.linalg.inv(S)
    assert np.max(np.abs(build_isospectral_tfim(pi) - conjugated)) < 1e-10


def test_similarity_transform_diagonal_entries():
    S = build_similarity_s(0.6, 3)
    assert np.count_nonzero(S - np.diag(np.diagonal(S))) == 0
    # |010>: popcount 1, entry exp(0.6 (3 - 2)/2).
    assert np.isclose(S[0b010, 0b010].real, np.exp(0.6 * 0.5))


def test_stationary_state_purity_matches_closed_form():
    for beta in (0.25, 1.0, 2.0):
        rho, purity = stationary_state(beta, 5)
        assert np.isclose(np.trace(rho).real, 1.0, atol=1e-14)
        assert abs(purity - stationary_purity_closed_form(beta, 5)) < 1e-14
        # The alternate published form disagrees away from beta = 0.
        assert abs(purity - stationary_purity_alternate_form(beta, 5)) > 1e-3


def test_param_validation():
    with pytest.raises(ValueError):
        SpinChainParams(L=0, J=1.0, g=1.0, h=0.0)
    with pytest.raises(ValueError):
        SpinChainParams(L=4, J=1.0, g=1.0, h=0.0, gamma=-0.1, family=Family.MEASUREMENT)
    with pytest.raises(ValueError):
        SpinChainParams(L=4, J=1.0, g=1.0, h=0.0, gamma=0.5)  # hermitian family
    with pytest.raises(ValueError):
        SpinChainParams(L=4, J=1.0, g=1.0, h=0.0, beta=0.5)


def test_capacity_cap():
    with pytest.raises(CapacityError):
        build_tfim(preset("chaotic", 15))
    # Explicit override works.
    p = SpinChainParams(L=3, J=1.0, g=1.0, h=0.0)
    assert build_tfim(p, cap=3).shape == (8, 8)
    with pytest.raises(CapacityError):
        build_tfim(p, cap=2)


def test_presets():
    p = preset("integrable", 4)
    assert (p.J, p.g, p.h) == (0.95, 1.0, 0.0)
    assert preset("classical", 4).g == 0.0
    with pytest.raises(ValueError):
        preset("nope", 4)


def test_load_params_toml(tmp_path):
    cfg = tmp_path / "model.toml"
    cfg.write_text('preset = "chaotic"\nL = 6\nfamily = "measurement"\ngamma = 0.5\n')
    p = load_params(cfg)
    assert p == SpinChainParams(L=6, J=0.95, g=1.0, h=0.5, gamma=0.5,
                                family=Family.MEASUREMENT)
    cfg.write_text('L = 4\nJ = 1.0\ng = 0.5\nh = 0.25\n')
    q = load_params(cfg)
    assert q.family is Family.HERMITIAN and q.g == 0.5


def test_operator_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    M = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    path = tmp_path / "op.txt"
    save_operator(path, M)
    assert np.array_equal(load_operator(path), M)
