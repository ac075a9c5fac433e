"""Octonion Hermitian random matrices: algebra, Jordan eigenvalues and Monte Carlo ensembles."""

from .hermitian import (
    HermOct,
    conj_transpose_product,
    det2,
    invariants3,
    jordan_product,
    oct_mat_mul,
    real_embedding,
    trace_square,
)
from .octonion import Octonion, cayley_dickson_mul, left_mult_matrix, oct_conj, oct_inv, oct_mul, oct_norm
from .sampling import EnsembleSpec, RngStream, run_ensemble
from .spectra import degeneracy_profile, eigen2, eigen3, eigen_projectors, sym_eigen

__all__ = [
    "EnsembleSpec",
    "HermOct",
    "Octonion",
    "RngStream",
    "cayley_dickson_mul",
    "conj_transpose_product",
    "degeneracy_profile",
    "det2",
    "eigen2",
    "eigen3",
    "eigen_projectors",
    "invariants3",
    "jordan_product",
    "left_mult_matrix",
    "oct_conj",
    "oct_inv",
    "oct_mat_mul",
    "oct_mul",
    "oct_norm",
    "real_embedding",
    "run_ensemble",
    "sym_eigen",
    "trace_square",
]
