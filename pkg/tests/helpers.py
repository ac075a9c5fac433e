"""Shared builders for the test suite."""

import numpy as np

from octorand.hermitian import PAIRS, HermOct


def random_herm(rng, N, size=None, components=8):
    """Random Hermitian matrix whose off-diagonal octonions use the first ``components`` coefficients."""
    b = () if size is None else (size,)
    upper = np.zeros(b + (len(PAIRS[N]), 8))
    upper[..., :components] = rng.standard_normal(b + (len(PAIRS[N]), components))
    return HermOct(rng.standard_normal(b + (N,)), upper)


def to_complex(H: HermOct) -> np.ndarray:
    """Dense complex matrix of a Hermitian matrix living in span{1, e1}."""
    M = H.to_matrix()
    return M[..., 0] + 1j * M[..., 1]


def from_complex(Z: np.ndarray) -> HermOct:
    Z = np.asarray(Z)
    M = np.zeros(Z.shape + (8,))
    M[..., 0], M[..., 1] = Z.real, Z.imag
    return HermOct.from_matrix(M)
