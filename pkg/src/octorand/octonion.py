"""Octonion arithmetic.

Octonions are stored as float arrays whose last axis holds the eight
coefficients in basis order ``(1, e1, ..., e7)`` with

    e1 = i, e2 = j, e3 = k, e4 = l, e5 = il, e6 = jl, e7 = kl.

Every array function broadcasts over leading axes, so a batch of ``K``
octonions is simply an array of shape ``(K, 8)``. :class:`Octonion` is a thin
immutable scalar wrapper for interactive use.

Multiplication exists twice: :func:`cayley_dickson_mul` expands the
quaternion-pair rule directly and is kept as the reference, while
:func:`oct_mul` goes through a precomputed signed permutation table built
from it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BASIS_NAMES = ("1", "e1", "e2", "e3", "e4", "e5", "e6", "e7")

# conjugation mask: keeps the real part, negates e1..e7
CONJ_MASK = np.array([1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0])


def _quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product on arrays with trailing axis ``(1, i, j, k)``."""
    p0, p1, p2, p3 = np.moveaxis(p, -1, 0)
    q0, q1, q2, q3 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ],
        axis=-1,
    )


def _quat_conj(p: np.ndarray) -> np.ndarray:
    return p * CONJ_MASK[:4]


def cayley_dickson_mul(a, b) -> np.ndarray:
    """Product of ``a = p1 + p2 l`` and ``b = q1 + q2 l``.

    Uses ``ab = (p1 q1 - conj(q2) p2) + (q2 p1 + p2 conj(q1)) l``.
    Slow but transparent; this is the sign-convention reference.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    p1, p2 = a[..., :4], a[..., 4:]
    q1, q2 = b[..., :4], b[..., 4:]
    first = _quat_mul(p1, q1) - _quat_mul(_quat_conj(q2), p2)
    second = _quat_mul(q2, p1) + _quat_mul(p2, _quat_conj(q1))
    return np.concatenate([first, second], axis=-1)


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    """Signed permutation table: ``e_i e_j = sign[i, j] * e_{index[i, j]}``."""

    index: np.ndarray
    sign: np.ndarray

    @classmethod
    def from_cayley_dickson(cls) -> MultiplicationTable:
        basis = np.eye(8)
        index = np.zeros((8, 8), dtype=np.intp)
        sign = np.zeros((8, 8))
        for i in range(8):
            for j in range(8):
                prod = cayley_dickson_mul(basis[i], basis[j])
                k = int(np.flatnonzero(prod)[0])
                index[i, j] = k
                sign[i, j] = prod[k]
        return cls(index, sign)

    def __post_init__(self):
        # for each left factor i, gather[i, k] is the j with e_i e_j = +-e_k
        gather = np.argsort(self.index, axis=1)
        object.__setattr__(self, "_gather", gather)
        object.__setattr__(
            self, "_gather_sign", np.take_along_axis(self.sign, gather, axis=1)
        )

    def structure_constants(self) -> np.ndarray:
        """Dense ``(8, 8, 8)`` array with ``e_i e_j = sum_k S[i, j, k] e_k``."""
        out = np.zeros((8, 8, 8))
        i, j = np.indices((8, 8))
        out[i, j, self.index] = self.sign
        return out

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        shape = np.broadcast_shapes(a.shape, b.shape)
        out = np.zeros(shape)
        for i in range(8):
            out += a[..., i : i + 1] * (b[..., self._gather[i]] * self._gather_sign[i])
        return out


TABLE = MultiplicationTable.from_cayley_dickson()


def _coeffs(x) -> np.ndarray:
    if isinstance(x, Octonion):
        return x.coeffs
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (8,):
        raise ValueError(f"octonion arrays need a trailing axis of length 8, got {arr.shape}")
    return arr


def _wrap(result: np.ndarray, *inputs):
    if any(isinstance(x, Octonion) for x in inputs):
        return Octonion(result)
    return result


def oct_mul(a, b):
    """Octonion product (table route). Broadcasts over leading axes."""
    return _wrap(TABLE.mul(_coeffs(a), _coeffs(b)), a, b)


def oct_conj(a):
    return _wrap(_coeffs(a) * CONJ_MASK, a)


def oct_norm(a):
    """Euclidean norm of the coefficient vector, ``sqrt(a conj(a))``."""
    return np.sqrt(np.sum(np.square(_coeffs(a)), axis=-1))


def oct_norm2(a) -> np.ndarray:
    return np.sum(np.square(_coeffs(a)), axis=-1)


def oct_real(a) -> np.ndarray:
    return _coeffs(a)[..., 0]


def oct_inv(a):
    """``conj(a) / |a|^2``; raises ZeroDivisionError for the zero octonion."""
    c = _coeffs(a)
    n2 = oct_norm2(c)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("the zero octonion has no inverse")
    return _wrap(c * CONJ_MASK / n2[..., None], a)


def left_mult_matrix(a, table: MultiplicationTable = TABLE) -> np.ndarray:
    """Real ``8 x 8`` matrix ``L`` with ``L @ coeffs(x) == coeffs(a x)``.

    Column ``j`` is ``a e_j``. For a batch of shape ``(..., 8)`` the result has
    shape ``(..., 8, 8)``.
    """
    c = _coeffs(a)
    return np.einsum("...i,ijk->...kj", c, table.structure_constants())


def scaled_error(lhs, rhs) -> np.ndarray:
    """Largest coefficient error divided by ``max(1, |lhs|, |rhs|)``."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    err = np.max(np.abs(lhs - rhs), axis=-1) if lhs.ndim else np.abs(lhs - rhs)
    if lhs.ndim:
        scale = np.maximum(1.0, np.maximum(oct_norm(lhs), oct_norm(rhs)))
    else:
        scale = max(1.0, abs(float(lhs)), abs(float(rhs)))
    return err / scale


class Octonion:
    """Immutable scalar octonion."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=(0.0,) * 8):
        c = np.array(coeffs, dtype=float)
        if c.shape != (8,):
            raise ValueError(f"an octonion has 8 coefficients, got shape {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Octonion is immutable")

    @classmethod
    def unit(cls, j: int) -> Octonion:
        """Basis element ``e_j`` (``j = 0`` gives 1)."""
        c = np.zeros(8)
        c[j] = 1.0
        return cls(c)

    @classmethod
    def real(cls, x: float) -> Octonion:
        return cls([x] + [0.0] * 7)

    @classmethod
    def from_quaternion_pair(cls, p1, p2) -> Octonion:
        """``p1 + p2 l`` for quaternions given as ``(w, x, y, z)``."""
        return cls(np.concatenate([np.asarray(p1, float), np.asarray(p2, float)]))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def quaternion_pair(self) -> tuple[np.ndarray, np.ndarray]:
        return self._c[:4].copy(), self._c[4:].copy()

    def conj(self) -> Octonion:
        return oct_conj(self)

    def norm(self) -> float:
        return float(oct_norm(self))

    def inv(self) -> Octonion:
        return oct_inv(self)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        if np.isscalar(other):
            return Octonion(self._c * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Octonion(self._c * other)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Octonion(self._c / other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Octonion):
            return Octonion(self._c + other._c)
        if np.isscalar(other):
            return Octonion(self._c + np.eye(8)[0] * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Octonion):
            return Octonion(self._c - other._c)
        if np.isscalar(other):
            return Octonion(self._c - np.eye(8)[0] * other)
        return NotImplemented

    def __neg__(self):
        return Octonion(-self._c)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        terms = [f"{v:+g}{'' if n == '1' else n}" for v, n in zip(self._c, BASIS_NAMES) if v]
        return f"Octonion({' '.join(terms) or '0'})"
