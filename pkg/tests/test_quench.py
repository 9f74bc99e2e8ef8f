import numpy as np
import pytest

from nhchain.models import Family, preset
from nhchain.quench import (neel_state, quench_bipartite_scaling,
                            quench_entropy_series)


def test_neel_state_index():
    # |0101> with site 1 = MSB: binary 0101 = 5.
    psi = neel_state(4)
    assert psi[0b0101] == 1.0 and np.linalg.norm(psi) == 1.0
    assert neel_state(3)[0b010] == 1.0


def test_entropy_starts_at_zero_and_grows():
    params = preset("chaotic", 4)
    run = quench_entropy_series(params, [1, 2], np.arange(0.0, 2.0, 0.25))
    for l in (1, 2):
        assert abs(run.series[l][0]) < 1e-10     # product state
        assert run.series[l].max() > 0.1         # entanglement is generated
        assert np.all(run.series[l] >= -1e-12)
        assert run.series[l].max() <= l + 1e-12  # bounded by log2 dim


def test_subsystem_size_validation():
    with pytest.raises(ValueError):
        quench_entropy_series(preset("chaotic", 4), [4], [0.0, 1.0])
    with pytest.raises(ValueError):
        quench_entropy_series(preset("chaotic", 4), [0], [0.0, 1.0])


def test_strong_measurement_suppresses_entropy():
    t_grid = np.arange(0.0, 8.0, 0.2)
    weak = preset("chaotic", 6, family=Family.MEASUREMENT, gamma=0.25)
    strong = preset("chaotic", 6, family=Family.MEASUREMENT, gamma=2.0)
    s_weak = quench_entropy_series(weak, [3], t_grid).series[3]
    s_strong = quench_entropy_series(strong, [3], t_grid).series[3]
    # Strong postselected measurement keeps the late-time state near pure.
    assert s_strong[-10:].mean() < s_weak[-10:].mean()


@pytest.fixture(scope="module")
def hermitian_l12_run():
    # One L=12 diagonalization shared by the saturation and growth-rate tests.
    t_grid = np.arange(0.0, 40.0 + 0.1, 0.2)
    return t_grid, quench_entropy_series(preset("chaotic", 12), [3, 6], t_grid)


def test_large_chain_entropy_saturates(hermitian_l12_run):
    t_grid, run = hermitian_l12_run
    late = run.series[3][(t_grid >= 20.0) & (t_grid <= 40.0)]
    assert late.std() < 0.1


def test_growth_rate_bound_carries_to_larger_chain(hermitian_l12_run):
    # Fit the slope bound on the half-cut series at L=10, assert it holds at L=12.
    t_grid, run12 = hermitian_l12_run
    run10 = quench_entropy_series(preset("chaotic", 10), [5], t_grid)
    c = 1.05 * np.max(np.abs(np.diff(run10.series[5]))) / 0.2
    assert np.max(np.abs(np.diff(run12.series[6]))) / 0.2 <= c


def test_strong_similarity_transform_bounds_entropy():
    # At beta = 2 the polarizing transform keeps the quench entropy well under
    # the Hermitian volume-law scale; bound pinned from a pre-build run (1.77).
    t_grid = np.arange(0.0, 40.0 + 0.1, 0.2)
    p = preset("chaotic", 12, family=Family.ISOSPECTRAL, beta=2.0)
    series = quench_entropy_series(p, [4], t_grid).series[4]
    assert series.max() < 1.8


def test_bipartite_scaling_table():
    params = preset("chaotic", 4, family=Family.MEASUREMENT, gamma=0.5)
    t_grid = np.arange(0.0, 1.0, 0.5)
    table = quench_bipartite_scaling(params, [4, 6], t_grid)
    assert set(table) == {4, 6}
    assert all(len(v) == len(t_grid) for v in table.values())
    # Half-cut series for the template's own L matches the direct run.
    direct = quench_entropy_series(params, [2], t_grid).series[2]
    assert np.allclose(table[4], direct)
