"""Random noisy quantum circuits, denoiser channels, and their spectra.

Dense superoperator toolkit: traceless operator bases, seeded random
ensembles (Ginibre, Wishart-type coupling matrices, Haar unitaries),
Lindblad generators, noisy-circuit assembly, exact and linear-order
denoisers, and spectral analytics (contours, distance profiles, decay
bands, free-probability bounds).
"""

from .basis import (
    OperatorBasis,
    build_full_basis,
    build_pauli_basis,
    pauli_sector_size,
    pauli_string_matrix,
    pauli_weight,
)
from .channels import (
    CircuitSpec,
    NoisyCircuit,
    assemble_noisy_circuit,
    fold_unitary,
    matrix_exponential,
    matrix_exponential_eig,
    noise_basis,
)
from .denoiser import (
    DenoiserResult,
    bch_commutator_correction,
    bch_linear_denoiser,
    compute_denoiser,
    defining_relation_defect,
    rotated_lindbladians,
)
from .ensembles import (
    KossakowskiMatrix,
    sample_ginibre,
    sample_global_kossakowski,
    sample_haar_unitary,
    sample_local_kossakowski,
)
from .lindblad import (
    build_lindbladian,
    build_lindbladian_diagonalized,
    build_local_lindbladian,
    trace_identity_defect,
)
from .rng import RngSeed, as_seed
from .spectra import (
    ContourPrediction,
    DecayBands,
    SpectrumSample,
    conjugation_closure_defect,
    decay_band_clusters,
    eigenvalues,
    empirical_lindblad_contour,
    kossakowski_sum_bounds,
    log_modulus_mean,
    min_distance_profile,
    points_in_contour,
    predict_denoiser_contour,
    symmetric_min_distance,
)
from .superop import (
    Superoperator,
    flat_trace_vector,
    identity_superoperator,
    trace_preservation_defect,
    unvectorize,
    vectorize,
)

__version__ = "0.1.0"

__all__ = [
    "OperatorBasis",
    "build_full_basis",
    "build_pauli_basis",
    "pauli_sector_size",
    "pauli_string_matrix",
    "pauli_weight",
    "CircuitSpec",
    "NoisyCircuit",
    "assemble_noisy_circuit",
    "fold_unitary",
    "matrix_exponential",
    "matrix_exponential_eig",
    "noise_basis",
    "DenoiserResult",
    "bch_commutator_correction",
    "bch_linear_denoiser",
    "compute_denoiser",
    "defining_relation_defect",
    "rotated_lindbladians",
    "KossakowskiMatrix",
    "sample_ginibre",
    "sample_global_kossakowski",
    "sample_haar_unitary",
    "sample_local_kossakowski",
    "build_lindbladian",
    "build_lindbladian_diagonalized",
    "build_local_lindbladian",
    "trace_identity_defect",
    "RngSeed",
    "as_seed",
    "ContourPrediction",
    "DecayBands",
    "SpectrumSample",
    "conjugation_closure_defect",
    "decay_band_clusters",
    "eigenvalues",
    "empirical_lindblad_contour",
    "kossakowski_sum_bounds",
    "log_modulus_mean",
    "min_distance_profile",
    "points_in_contour",
    "predict_denoiser_contour",
    "symmetric_min_distance",
    "Superoperator",
    "flat_trace_vector",
    "identity_superoperator",
    "trace_preservation_defect",
    "unvectorize",
    "vectorize",
]
