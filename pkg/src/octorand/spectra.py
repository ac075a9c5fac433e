"""Eigenvalues of Hermitian octonion matrices.

``N = 2`` reduces to a quadratic. ``N = 3`` uses the Jordan-algebra
characteristic cubic, whose roots are always real; eigen-matrices are built
by Lagrange interpolation in Jordan powers of ``H``. :func:`sym_eigen` is an
independent cyclic Jacobi solver for the real embeddings.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .hermitian import HermOct, invariants3, jordan_product, trace_square


class NumericInconsistencyError(ArithmeticError):
    """A computed quantity violates a guarantee of the theory."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class DegenerateSpectrumError(ArithmeticError):
    pass


class ConvergenceError(ArithmeticError):
    pass


class ProjectorTriple(NamedTuple):
    P1: HermOct
    P2: HermOct
    P3: HermOct


def spectral_scale(H: HermOct) -> np.ndarray:
    """``max(1, sqrt(Tr H^2))``, an upper bound on every ``|lambda|``."""
    return np.maximum(1.0, np.sqrt(trace_square(H)))


def eigen2(H: HermOct) -> np.ndarray:
    """Ascending roots of ``l^2 - (a + c) l + (ac - |b|^2)``, shape ``(..., 2)``."""
    if H.N != 2:
        raise ValueError("eigen2 needs N = 2")
    a, c = H.diag[..., 0], H.diag[..., 1]
    b2 = np.sum(H.upper[..., 0, :] ** 2, axis=-1)
    tr = a + c
    root = np.sqrt((a - c) ** 2 + 4.0 * b2)
    # larger-magnitude root first, the other from the product of roots
    big = 0.5 * (tr + np.copysign(root, tr))
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big != 0.0, (a * c - b2) / big, 0.0)
    return np.sort(np.stack([small, big], axis=-1), axis=-1)


def _cubic_roots(trace, sigma, det, scale):
    """Real roots of ``l^3 - trace l^2 + sigma l - det`` for a batch."""
    trace, sigma, det, scale = (np.asarray(x, dtype=float) for x in (trace, sigma, det, scale))
    shift = trace / 3.0
    p = sigma - trace**2 / 3.0
    q = -2.0 * trace**3 / 27.0 + trace * sigma / 3.0 - det
    # the discriminant is scale^6-homogeneous
    disc = -(4.0 * p**3 + 27.0 * q**2)
    bad = disc < -1e-10 * scale**6
    if np.any(bad):
        worst = float(np.min(disc[bad] / scale[bad] ** 6))
        raise NumericInconsistencyError("characteristic cubic has complex roots", worst)

    m = 2.0 * np.sqrt(np.maximum(-p, 0.0) / 3.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = np.where(m > 0.0, 3.0 * q / (p * m), 0.0)
    theta = np.arccos(np.clip(arg, -1.0, 1.0)) / 3.0
    k = np.arange(3)
    t = m[..., None] * np.cos(theta[..., None] - 2.0 * np.pi * k / 3.0)
    lam = t + shift[..., None]

    # one Newton step on the monic cubic
    tr, sg, dt = trace[..., None], sigma[..., None], det[..., None]
    f = ((lam - tr) * lam + sg) * lam - dt
    df = (3.0 * lam - 2.0 * tr) * lam + sg
    safe = np.abs(df) > 1e-8 * scale[..., None] ** 2
    step = np.where(safe, f / np.where(safe, df, 1.0), 0.0)
    return np.sort(lam - step, axis=-1)


def eigen3(H: HermOct) -> np.ndarray:
    """Ascending Jordan eigenvalues of a 3x3 Hermitian octonion matrix, shape ``(..., 3)``."""
    if H.N != 3:
        raise ValueError("eigen3 needs N = 3")
    trace, sigma, det = invariants3(H)
    return _cubic_roots(trace, sigma, det, spectral_scale(H))


def eigen_projectors(H: HermOct, spectrum: np.ndarray | None = None) -> ProjectorTriple:
    """Idempotents ``P_i`` with ``H = sum_i lambda_i P_i``.

    ``P_i = (H^2 - (l_j + l_k) H + l_j l_k I) / ((l_i - l_j)(l_i - l_k))``
    with ``H^2 = H o H``. Refuses spectra with a relative gap below 1e-6.
    """
    if H.N != 3:
        raise ValueError("eigen_projectors needs N = 3")
    lam = eigen3(H) if spectrum is None else np.asarray(spectrum, dtype=float)
    scale = spectral_scale(H)
    gap = np.minimum(lam[..., 1] - lam[..., 0], lam[..., 2] - lam[..., 1])
    if np.any(gap <= 1e-6 * scale):
        raise DegenerateSpectrumError(
            f"eigenvalue gap {float(np.min(gap / scale)):.3e} (relative) is too small for projectors"
        )
    H2 = jordan_product(H, H)
    eye = HermOct.identity(3)
    out = []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        li, lj, lk = lam[..., i], lam[..., j], lam[..., k]
        num = H2 - H * (lj + lk) + eye * np.broadcast_to(lj * lk, H.batch_shape)
        out.append(num / ((li - lj) * (li - lk)))
    return ProjectorTriple(*out)


def sym_eigen(M: np.ndarray, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending."""
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("sym_eigen needs a square matrix")
    n = A.shape[0]
    if n > 64:
        raise ValueError("sym_eigen is meant for matrices up to 64 x 64")
    target = 1e-13 * np.linalg.norm(A)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(A[iu] ** 2))
        if off <= target:
            return np.sort(np.diag(A))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = A[q, p] = 0.0
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def degeneracy_profile(eigs, tol: float = 1e-8) -> list[tuple[float, int]]:
    """Group sorted eigenvalues; a cluster breaks where the gap exceeds ``tol * max(1, |eig|)``."""
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size == 0:
        return []
    if np.any(np.diff(eigs) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    clusters = [[eigs[0]]]
    for prev, cur in zip(eigs[:-1], eigs[1:]):
        if cur - prev > tol * max(1.0, abs(cur)):
            clusters.append([cur])
        else:
            clusters[-1].append(cur)
    return [(float(np.mean(c)), len(c)) for c in clusters]
