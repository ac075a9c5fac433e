"""Seeded random streams and the octonion random-matrix ensembles.

Every ensemble sampler takes an :class:`RngStream` and an optional ``size``;
with ``size=None`` it returns one matrix, otherwise a batch
:class:`~octorand.hermitian.HermOct` with leading axis ``size``.

Experiments are split into fixed blocks of ``BLOCK_SIZE`` trials. Block ``b``
draws from its own stream ``(seed, b)``, so results do not depend on how
blocks are distributed over workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .hermitian import HermOct, conj_transpose, conj_transpose_product, invariants3, oct_mat_mul

BLOCK_SIZE = 4096
WORKERS_ENV = "OCTORAND_WORKERS"
ENSEMBLES = ("gauss2", "gauss3", "wishart2", "cholesky2", "tri3-det", "tri3-jordan")
_MASK64 = (1 << 64) - 1


class RngStream:
    """Counter-based random stream keyed by ``(seed, index)``.

    Backed by Philox with the 128-bit key ``seed | index << 64``; distinct
    indices give non-overlapping, independent streams.
    """

    def __init__(self, seed: int, index: int = 0):
        if not (0 <= seed <= _MASK64 and 0 <= index <= _MASK64):
            raise ValueError("seed and index must be unsigned 64-bit integers")
        self.seed = int(seed)
        self.index = int(index)
        self.generator = np.random.Generator(np.random.Philox(key=self.seed | (self.index << 64)))

    def substream(self, index: int) -> RngStream:
        return RngStream(self.seed, index)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, index={self.index})"


def sample_gaussian(s: RngStream, mean: float = 0.0, sigma: float = 1.0, size=None):
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return s.generator.normal(mean, sigma, size=size)


def sample_gamma(s: RngStream, shape: float, scale: float, size=None):
    """Gamma variate with the given shape and scale (mean ``shape * scale``)."""
    if shape <= 0 or scale <= 0:
        raise ValueError("shape and scale must be positive")
    return s.generator.gamma(shape, scale, size=size)


def _batch(size) -> tuple[int, ...]:
    return () if size is None else (int(size),)


def sample_gauss_oct2(s: RngStream, size=None) -> HermOct:
    """Diagonal ``N(0, 1)``; the eight off-diagonal coefficients ``N(0, 1/sqrt 2)``."""
    b = _batch(size)
    diag = s.generator.standard_normal(b + (2,))
    upper = s.generator.normal(0.0, np.sqrt(0.5), size=b + (1, 8))
    return HermOct(diag, upper)


def sample_gauss_oct3(s: RngStream, size=None) -> HermOct:
    b = _batch(size)
    diag = s.generator.standard_normal(b + (3,))
    upper = s.generator.normal(0.0, np.sqrt(0.5), size=b + (3, 8))
    return HermOct(diag, upper)


def sample_wishart_oct2(s: RngStream, n: int, size=None) -> HermOct:
    """``X^dagger X`` for an ``n x 2`` matrix of standard Gaussian octonions."""
    if n < 2:
        raise ValueError("wishart2 needs n >= 2")
    X = s.generator.standard_normal(_batch(size) + (n, 2, 8))
    return conj_transpose_product(X)


def cholesky_factor2(s: RngStream, a_param: float, size=None) -> np.ndarray:
    """Upper-triangular ``T`` with ``t11^2 ~ Gamma(a+1, 2)``, ``t22^2 ~ Gamma(a+5, 2)``."""
    if a_param <= -1:
        raise ValueError("cholesky2 needs a_param > -1")
    b = _batch(size)
    T = np.zeros(b + (2, 2, 8))
    T[..., 0, 0, 0] = np.sqrt(s.generator.gamma(a_param + 1.0, 2.0, size=b))
    T[..., 1, 1, 0] = np.sqrt(s.generator.gamma(a_param + 5.0, 2.0, size=b))
    T[..., 0, 1, :] = s.generator.standard_normal(b + (8,))
    return T


def sample_cholesky_oct2(s: RngStream, a_param: float, size=None) -> HermOct:
    return conj_transpose_product(cholesky_factor2(s, a_param, size))


def triangular_factor3(s: RngStream, a_param: float, size=None, offdiag: str = "full") -> np.ndarray:
    """Upper-triangular 3x3 ``T`` with ``t_ii^2 ~ Gamma(a + 4(i-1), 2)``.

    ``offdiag`` selects the strict upper entries: ``"full"`` standard Gaussian
    octonions, ``"real"`` only the real coefficient, ``"zero"`` none.
    """
    if a_param <= 0:
        raise ValueError("tri3 ensembles need a_param > 0")
    if offdiag not in ("full", "real", "zero"):
        raise ValueError(f"unknown offdiag mode {offdiag!r}")
    b = _batch(size)
    T = np.zeros(b + (3, 3, 8))
    for i in range(3):
        T[..., i, i, 0] = np.sqrt(s.generator.gamma(a_param + 4.0 * i, 2.0, size=b))
    off = s.generator.standard_normal(b + (3, 8))
    if offdiag == "real":
        off[..., 1:] = 0.0
    elif offdiag == "zero":
        off[...] = 0.0
    for p, (i, j) in enumerate(((0, 1), (0, 2), (1, 2))):
        T[..., i, j, :] = off[..., p, :]
    return T


def sample_tri3_detsign(s: RngStream, a_param: float, size=None, offdiag: str = "full"):
    """``W = T^dagger T`` and the sign of its determinant."""
    W = conj_transpose_product(triangular_factor3(s, a_param, size, offdiag))
    det = invariants3(W)[2]
    return W, np.where(det < 0.0, -1, 1)


def sample_tri3_jordan(s: RngStream, a_param: float, size=None, offdiag: str = "full") -> HermOct:
    """Jordan-symmetrized ``(T^dagger T + T T^dagger) / 2``."""
    T = triangular_factor3(s, a_param, size, offdiag)
    Th = conj_transpose(T)
    return HermOct.from_matrix(0.5 * (oct_mat_mul(Th, T) + oct_mat_mul(T, Th)))


@dataclass(frozen=True)
class EnsembleSpec:
    ensemble: str
    trials: int
    seed: int
    n: int | None = None
    a_param: float | None = None
    offdiag: str = "full"

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.ensemble == "wishart2" and (self.n is None or self.n < 2):
            raise ValueError("wishart2 needs n >= 2")
        if self.ensemble == "cholesky2" and (self.a_param is None or self.a_param <= -1):
            raise ValueError("cholesky2 needs a_param > -1")
        if self.ensemble.startswith("tri3") and (self.a_param is None or self.a_param <= 0):
            raise ValueError("tri3 ensembles need a_param > 0")

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def sample_ensemble(spec: EnsembleSpec, s: RngStream, size: int) -> HermOct:
    if spec.ensemble == "gauss2":
        return sample_gauss_oct2(s, size)
    if spec.ensemble == "gauss3":
        return sample_gauss_oct3(s, size)
    if spec.ensemble == "wishart2":
        return sample_wishart_oct2(s, spec.n, size)
    if spec.ensemble == "cholesky2":
        return sample_cholesky_oct2(s, spec.a_param, size)
    if spec.ensemble == "tri3-det":
        return sample_tri3_detsign(s, spec.a_param, size, spec.offdiag)[0]
    return sample_tri3_jordan(s, spec.a_param, size, spec.offdiag)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_ensemble(
    spec: EnsembleSpec,
    reducer: Callable[[HermOct], np.ndarray],
    workers: int | None = None,
) -> np.ndarray:
    """Sample ``spec.trials`` matrices block by block and apply ``reducer`` per block.

    Returns the per-trial results concatenated in trial order.
    """
    workers = default_workers() if workers is None else max(1, workers)
    starts = range(0, spec.trials, BLOCK_SIZE)

    def one_block(block: int) -> np.ndarray:
        count = min(BLOCK_SIZE, spec.trials - block * BLOCK_SIZE)
        return reducer(sample_ensemble(spec, RngStream(spec.seed, block), count))

    blocks = range(len(starts))
    if workers == 1:
        parts = [one_block(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_block, blocks))
    return np.concatenate(parts, axis=0)
