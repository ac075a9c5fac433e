"""Matrices with octonion entries.

General octonion matrices are plain arrays of shape ``(..., n, m, 8)``.
Hermitian ``N x N`` matrices (``N`` in ``{2, 3}``) are held in
:class:`HermOct`, which stores only the real diagonal and the strict upper
triangle, so Hermiticity holds by construction. Leading axes are batch axes
throughout, which is how the Monte Carlo code processes many trials at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .octonion import CONJ_MASK, left_mult_matrix, oct_mul, oct_norm2

# strict upper-triangle positions, in storage order
PAIRS = {2: ((0, 1),), 3: ((0, 1), (0, 2), (1, 2))}


def oct_mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``(A B)_{ij} = sum_k A_{ik} B_{kj}`` with octonion scalar products."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim < 3 or B.ndim < 3 or A.shape[-1] != 8 or B.shape[-1] != 8:
        raise ValueError("octonion matrices need shape (..., rows, cols, 8)")
    if A.shape[-2] != B.shape[-3]:
        raise ValueError(f"inner dimensions differ: {A.shape[-3:-1]} @ {B.shape[-3:-1]}")
    terms = oct_mul(A[..., :, :, None, :], B[..., None, :, :, :])
    return terms.sum(axis=-3)


def conj_transpose(A: np.ndarray) -> np.ndarray:
    return np.swapaxes(np.asarray(A, dtype=float), -2, -3) * CONJ_MASK


def oct_identity(n: int) -> np.ndarray:
    out = np.zeros((n, n, 8))
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class HermOct:
    """Hermitian octonion matrix, or a batch of them.

    ``diag`` has shape ``(..., N)``; ``upper`` has shape ``(..., P, 8)`` with
    rows ordered as in ``PAIRS[N]``.
    """

    diag: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        n = diag.shape[-1]
        if n not in PAIRS:
            raise ValueError(f"only N = 2 or 3 is supported, got N = {n}")
        if upper.shape != diag.shape[:-1] + (len(PAIRS[n]), 8):
            raise ValueError(f"upper has shape {upper.shape}, expected {diag.shape[:-1] + (len(PAIRS[n]), 8)}")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "upper", upper)

    @property
    def N(self) -> int:
        return self.diag.shape[-1]

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.diag.shape[:-1]

    def __len__(self):
        return self.batch_shape[0]

    def __getitem__(self, idx) -> HermOct:
        if not self.batch_shape:
            raise TypeError("cannot index a single matrix; use entry(i, j)")
        return HermOct(self.diag[idx], self.upper[idx])

    @classmethod
    def identity(cls, N: int) -> HermOct:
        return cls.diagonal(np.ones(N))

    @classmethod
    def diagonal(cls, values) -> HermOct:
        values = np.asarray(values, dtype=float)
        n = values.shape[-1]
        return cls(values, np.zeros(values.shape[:-1] + (len(PAIRS[n]), 8)))

    @classmethod
    def from_matrix(cls, M: np.ndarray, atol: float = 1e-12) -> HermOct:
        """Extract the Hermitian part of a full ``(..., N, N, 8)`` array.

        The imaginary diagonal residue and the mismatch between ``M_ji`` and
        ``conj(M_ij)`` must both be within ``atol`` times the entry scale.
        """
        M = np.asarray(M, dtype=float)
        n = M.shape[-2]
        scale = max(1.0, float(np.max(np.abs(M), initial=0.0)))
        idx = np.arange(n)
        diag = M[..., idx, idx, :]
        if np.max(np.abs(diag[..., 1:]), initial=0.0) > atol * scale:
            raise ValueError("diagonal entries are not real")
        rows = [i for i, _ in PAIRS[n]]
        cols = [j for _, j in PAIRS[n]]
        upper = M[..., rows, cols, :]
        lower = M[..., cols, rows, :]
        if np.max(np.abs(upper - lower * CONJ_MASK), initial=0.0) > atol * scale:
            raise ValueError("matrix is not Hermitian")
        return cls(diag[..., 0], upper)

    def to_matrix(self) -> np.ndarray:
        n = self.N
        out = np.zeros(self.batch_shape + (n, n, 8))
        idx = np.arange(n)
        out[..., idx, idx, 0] = self.diag
        for p, (i, j) in enumerate(PAIRS[n]):
            out[..., i, j, :] = self.upper[..., p, :]
            out[..., j, i, :] = self.upper[..., p, :] * CONJ_MASK
        return out

    def entry(self, i: int, j: int) -> np.ndarray:
        if i == j:
            e = np.zeros(self.batch_shape + (8,))
            e[..., 0] = self.diag[..., i]
            return e
        p = PAIRS[self.N].index((min(i, j), max(i, j)))
        x = self.upper[..., p, :]
        return x if i < j else x * CONJ_MASK

    def trace(self) -> np.ndarray:
        return self.diag.sum(axis=-1)

    def __add__(self, other: HermOct) -> HermOct:
        return HermOct(self.diag + other.diag, self.upper + other.upper)

    def __sub__(self, other: HermOct) -> HermOct:
        return HermOct(self.diag - other.diag, self.upper - other.upper)

    def __neg__(self) -> HermOct:
        return HermOct(-self.diag, -self.upper)

    def __mul__(self, alpha) -> HermOct:
        alpha = np.asarray(alpha, dtype=float)
        return HermOct(self.diag * alpha[..., None], self.upper * alpha[..., None, None])

    __rmul__ = __mul__

    def __truediv__(self, alpha) -> HermOct:
        return self * (1.0 / np.asarray(alpha, dtype=float))

    def max_abs(self) -> np.ndarray:
        """Largest entry magnitude per matrix, for tolerance checks."""
        return np.maximum(
            np.max(np.abs(self.diag), axis=-1),
            np.max(np.abs(self.upper), axis=(-2, -1)),
        )


def jordan_product(A: HermOct, B: HermOct) -> HermOct:
    """``(A B + B A) / 2`` computed through full octonion matrix products."""
    if A.N != B.N:
        raise ValueError("Jordan product needs matrices of equal size")
    a, b = A.to_matrix(), B.to_matrix()
    return HermOct.from_matrix(0.5 * (oct_mat_mul(a, b) + oct_mat_mul(b, a)), atol=1e-10)


def real_embedding(H: HermOct) -> np.ndarray:
    """Real symmetric ``8N x 8N`` block matrix.

    Diagonal blocks are ``x_jj I_8``, block ``(i, j)`` for ``i < j`` is the
    left-multiplication matrix of ``x_ij`` and block ``(j, i)`` its transpose.
    """
    n = H.N
    out = np.zeros(H.batch_shape + (8 * n, 8 * n))
    eye = np.eye(8)
    for i in range(n):
        out[..., 8 * i : 8 * i + 8, 8 * i : 8 * i + 8] = H.diag[..., i, None, None] * eye
    blocks = left_mult_matrix(H.upper)
    for p, (i, j) in enumerate(PAIRS[n]):
        L = blocks[..., p, :, :]
        out[..., 8 * i : 8 * i + 8, 8 * j : 8 * j + 8] = L
        out[..., 8 * j : 8 * j + 8, 8 * i : 8 * i + 8] = np.swapaxes(L, -1, -2)
    return out


def invariants3(H: HermOct) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Trace, second invariant sigma and determinant of a 3x3 Hermitian matrix.

    The cubic term uses ``Re(conj(x13) (x12 x23))`` with the inner product
    evaluated first.
    """
    if H.N != 3:
        raise ValueError("invariants3 needs N = 3")
    x11, x22, x33 = np.moveaxis(H.diag, -1, 0)
    x12, x13, x23 = (H.upper[..., p, :] for p in range(3))
    n12, n13, n23 = oct_norm2(x12), oct_norm2(x13), oct_norm2(x23)
    trace = x11 + x22 + x33
    sigma = x11 * x22 + x11 * x33 + x22 * x33 - n12 - n13 - n23
    cycle = oct_mul(x13 * CONJ_MASK, oct_mul(x12, x23))[..., 0]
    det = x11 * x22 * x33 + 2.0 * cycle - x33 * n12 - x22 * n13 - x11 * n23
    return trace, sigma, det


def det2(W: HermOct) -> np.ndarray:
    if W.N != 2:
        raise ValueError("det2 needs N = 2")
    return W.diag[..., 0] * W.diag[..., 1] - oct_norm2(W.upper[..., 0, :])


def trace_square(H: HermOct) -> np.ndarray:
    """``Tr(H o H)``: squared diagonal plus twice the squared off-diagonal norms."""
    return np.sum(H.diag**2, axis=-1) + 2.0 * np.sum(oct_norm2(H.upper), axis=-1)


def conj_transpose_product(X: np.ndarray) -> HermOct:
    """``X^dagger X`` for an ``(..., n, N, 8)`` octonion matrix, ``N`` in ``{2, 3}``."""
    X = np.asarray(X, dtype=float)
    if X.shape[-2] not in PAIRS:
        raise ValueError(f"X must have 2 or 3 columns, got {X.shape[-2]}")
    return HermOct.from_matrix(oct_mat_mul(conj_transpose(X), X))
