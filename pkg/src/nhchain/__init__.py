"""Exact-diagonalization laboratory for scrambling and operator entanglement
in local non-Hermitian quantum spin chains."""

from .models import (Family, SpinChainParams, build_hamiltonian,
                     build_isospectral_tfim, build_measurement_tfim,
                     build_similarity_s, build_tfim, preset, site_operator,
                     stationary_state)
from .spectral import (NearDefectiveError, SpectralDecomposition, decompose,
                       detect_transitions, long_time_eigenspace, spectral_flow)
from .evolution import ZeroNormError, evolve_mixed, evolve_pure, propagator
from .opent import (Bipartition, SchmidtSpectrum, linear_opent, operator_schmidt,
                    renyi2_opent, subsystem_entropy)
from .scrambling import (HaarSampleReport, LocalObservable, haar_bipartite_otoc,
                         heisenberg_haar_otoc, otoc_lightcone, otoc_normalized,
                         subsystem_linear_entropy)
from .lta import (GramMatrices, NonPositiveError, NrcReport, analytic_opent_lta,
                  analytic_otoc_lta, check_nrc, gram_matrices, numeric_lta)
from .quench import neel_state, quench_bipartite_scaling, quench_entropy_series
from .ensembles import EnsembleKind, RandomEnsemble, sample_ensemble

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
