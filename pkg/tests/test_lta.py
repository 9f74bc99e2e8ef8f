import numpy as np
import pytest

import oracles
from nhchain.ensembles import EnsembleKind, RandomEnsemble, sample_ensemble
from nhchain.evolution import propagator
from nhchain.lta import (NonPositiveError, _min_difference_gap, analytic_opent_lta,
                         analytic_otoc_lta, check_nrc, gram_matrices, numeric_lta,
                         opent_time_series, saturation_value)
from nhchain.models import Family, build_hamiltonian, preset
from nhchain.opent import Bipartition, linear_opent, renyi2_opent
from nhchain.scrambling import heisenberg_haar_otoc, subsystem_linear_entropy
from nhchain.spectral import decompose, long_time_eigenspace


def test_numeric_lta_of_known_functions():
    assert numeric_lta(lambda t: 3.0, 0.0, 1.0, 50) == 3.0
    # Mean of t over [0, 2] on a uniform grid including both endpoints.
    assert abs(numeric_lta(lambda t: t, 0.0, 2.0, 101) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        numeric_lta(lambda t: t, 1.0, 0.0, 50)
    with pytest.raises(ValueError):
        numeric_lta(lambda t: t, 0.0, 1.0, 5)


def test_opent_time_series_matches_pointwise():
    spec = decompose(build_hamiltonian(preset("chaotic", 3)))
    bi = Bipartition.half_cut(3)
    grid = np.array([0.0, 0.7, 1.9])
    series = opent_time_series(spec, bi, grid)
    for t, v in zip(grid, series):
        assert abs(v - renyi2_opent(propagator(spec, t), bi)) < 1e-12


def test_min_difference_gap_matches_brute_force():
    rng = np.random.default_rng(12)
    for n in (2, 4, 7):
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        assert abs(_min_difference_gap(w) - oracles.min_difference_gap_brute(w)) < 1e-12
    assert _min_difference_gap(np.array([1.0 + 0j])) == np.inf


def test_check_nrc_detects_resonance():
    # Equally spaced spectrum: difference 1 appears twice.
    resonant = np.array([0.0, 1.0, 2.0], dtype=complex)
    report = check_nrc(resonant)
    assert not report.full_nrc
    clean = np.array([0.0, 1.0, 2.7], dtype=complex)
    assert check_nrc(clean).full_nrc
    # Restricting to a clean long-time subset of a resonant spectrum passes.
    subset = check_nrc(resonant, longtime=[0, 1])
    assert not subset.full_nrc and subset.longtime_nrc
    assert check_nrc(clean, longtime=[0, 2]).longtime_nrc


def test_gram_matrices_properties():
    params = preset("chaotic", 4, family=Family.MEASUREMENT, gamma=0.6)
    spec = decompose(build_hamiltonian(params))
    lte = long_time_eigenspace(spec)
    g = gram_matrices(spec, lte, Bipartition.half_cut(4))
    n = lte.degeneracy
    assert g.n == n and g.R.shape == (n, n)
    for M in (g.R, g.L, g.R_A, g.L_A, g.R_B, g.L_B, g.L_AB):
        assert np.max(np.abs(M - M.T)) < 1e-10
        assert M.min() >= 0.0
    # Unit-normalized right vectors: diag(R) = 1 and diag(R_A) = purity <= 1.
    assert np.max(np.abs(np.diagonal(g.R) - 1.0)) < 1e-10
    assert np.all(np.diagonal(g.R_A) <= 1.0 + 1e-10)
    assert abs(g.eta_L_trace - np.trace(lte.eta_L).real) < 1e-8


def test_analytic_lta_matches_numeric_on_gue():
    H = sample_ensemble(RandomEnsemble(EnsembleKind.GUE, 16, seed=5))
    spec = decompose(H)
    lte = long_time_eigenspace(spec)
    bi = Bipartition.half_cut(4)
    analytic = analytic_opent_lta(spec, lte, bi)
    numeric = numeric_lta(lambda t: renyi2_opent(propagator(spec, t), bi),
                          100.0, 400.0, 400)
    assert abs(analytic - numeric) < 0.15


def test_analytic_otoc_lta_matches_numeric_on_nonhermitian():
    params = preset("chaotic", 4, family=Family.MEASUREMENT, gamma=0.6)
    spec = decompose(build_hamiltonian(params))
    lte = long_time_eigenspace(spec)
    bi = Bipartition.half_cut(4)
    eop_lin, e_b = analytic_otoc_lta(spec, lte, bi)

    def haar_otoc(t):
        U = propagator(spec, t)
        return heisenberg_haar_otoc(U, bi)

    numeric = numeric_lta(haar_otoc, 50.0, 150.0, 200)
    assert abs((eop_lin - e_b) - numeric) < 0.1
    # Components also track their own averages.
    num_lin = numeric_lta(lambda t: linear_opent(propagator(spec, t), bi),
                          50.0, 150.0, 200)
    assert abs(eop_lin - num_lin) < 0.05
    num_eb = numeric_lta(
        lambda t: subsystem_linear_entropy(propagator(spec, t), bi), 50.0, 150.0, 200)
    assert abs(e_b - num_eb) < 0.05


def test_analytic_lta_nonpositive_bracket_raises():
    from nhchain.lta import GramMatrices
    z = np.zeros((1, 1))
    g = GramMatrices(R=z, L=z, R_A=z, L_A=z, R_B=z, L_B=z, L_AB=z,
                     eta_L_trace=0.0, n=1)
    spec = decompose(np.eye(2, dtype=complex))
    with pytest.raises(NonPositiveError):
        analytic_opent_lta(spec, long_time_eigenspace(spec),
                           Bipartition((1,), 2), grams=g)


def test_saturation_value_uses_final_third():
    series = np.array([0.0, 0.0, 0.0, 0.0, 3.0, 3.0])
    assert saturation_value(series) == 3.0
