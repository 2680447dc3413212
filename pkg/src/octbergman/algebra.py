"""Octonion arithmetic.

The multiplication table is generated from the seven oriented triples

    (1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5)

with ``e_a e_b = e_c = -e_b e_a`` and its cyclic shifts for every triple
``(a, b, c)``.  ``e_0`` is the unit and ``e_i e_i = -e_0`` for ``i >= 1``.

Two layers are exposed:

* array functions (:func:`mul`, :func:`conj`, :func:`norm`, ...) acting on
  float arrays whose last axis has length 8 and broadcasting over the rest;
  every kernel and quadrature routine is built on these;
* :class:`Octonion`, a small immutable value type with operator overloads
  for interactive use and for the law tests.

>>> e = basis
>>> e[1] * e[2] == e[3]
True
>>> associator(e[1], e[2], e[4])
Octonion(0, 0, 0, 0, 0, 0, 0, 2)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

__all__ = [
    "TRIPLES",
    "TripleTable",
    "TABLE",
    "SingularityError",
    "Octonion",
    "basis",
    "as_array",
    "mul",
    "conj",
    "norm",
    "norm2",
    "real",
    "inverse",
    "associator",
    "scalar",
]

TRIPLES: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
)


class SingularityError(ValueError):
    """Raised when an operation is evaluated at (or too near) a singular point."""


@dataclass(frozen=True)
class TripleTable:
    """Structure constants ``e_i e_j = sign[i, j] * e_{index[i, j]}``.

    ``index`` and ``sign`` are read-only 8x8 integer arrays.  ``gather`` and
    ``gsign`` are the transposed lookup used by :func:`mul`: for output
    component ``k`` and left index ``i`` the unique right index ``j`` with
    ``e_i e_j = +-e_k`` is ``gather[k, i]``.
    """

    triples: tuple[tuple[int, int, int], ...]
    index: np.ndarray
    sign: np.ndarray
    gather: np.ndarray
    gsign: np.ndarray

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, int]]) -> "TripleTable":
        triples = tuple(tuple(t) for t in triples)
        index = np.full((8, 8), -1, dtype=np.int64)
        sign = np.zeros((8, 8), dtype=np.int64)
        for i in range(8):
            index[0, i] = index[i, 0] = i
            sign[0, i] = sign[i, 0] = 1
        for i in range(1, 8):
            index[i, i] = 0
            sign[i, i] = -1
        for a, b, c in triples:
            for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
                for (u, v, s) in ((p, q, 1), (q, p, -1)):
                    if index[u, v] != -1:
                        raise ValueError(f"triple table assigns e{u}e{v} twice")
                    index[u, v] = r
                    sign[u, v] = s
        if (index < 0).any():
            raise ValueError("triples do not cover every basis product")
        gather = np.empty((8, 8), dtype=np.int64)
        gsign = np.empty((8, 8), dtype=np.float64)
        for i in range(8):
            for j in range(8):
                k = index[i, j]
                gather[k, i] = j
                gsign[k, i] = sign[i, j]
        for arr in (index, sign, gather, gsign):
            arr.setflags(write=False)
        return cls(triples, index, sign, gather, gsign)

    def epsilon(self, i: int, j: int, k: int) -> int:
        """Structure constant: coefficient of ``e_k`` in ``e_i e_j``."""
        return int(self.sign[i, j]) if self.index[i, j] == k else 0


TABLE = TripleTable.from_triples(TRIPLES)

ArrayLike = Union[np.ndarray, "Octonion", Iterable[float], float]


def as_array(x) -> np.ndarray:
    """Coerce an octonion-like value to a float array with trailing axis 8.

    Real scalars are promoted to multiples of ``e_0``.
    """
    if isinstance(x, Octonion):
        return x._c
    a = np.asarray(x, dtype=np.float64)
    if a.ndim == 0:
        out = np.zeros(8)
        out[0] = a
        return out
    if a.shape[-1] != 8:
        raise ValueError(f"octonion arrays need a trailing axis of length 8, got {a.shape}")
    return a


def scalar(s) -> np.ndarray:
    """Embed real values ``s`` (any shape) as octonions ``s * e_0``."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros(s.shape + (8,))
    out[..., 0] = s
    return out


def mul(x, y) -> np.ndarray:
    """Octonion product ``x y`` over broadcast leading axes."""
    x = as_array(x)
    y = as_array(y)
    shape = np.broadcast_shapes(x.shape, y.shape)
    out = np.zeros(shape)
    g, s = TABLE.gather, TABLE.gsign
    for i in range(8):
        out += x[..., i : i + 1] * (s[:, i] * y[..., g[:, i]])
    return out


def conj(x) -> np.ndarray:
    x = as_array(x)
    out = -x
    out[..., 0] = x[..., 0]
    return out


def norm2(x) -> np.ndarray:
    x = as_array(x)
    return np.einsum("...i,...i->...", x, x)


def norm(x) -> np.ndarray:
    return np.sqrt(norm2(x))


def real(x) -> np.ndarray:
    return as_array(x)[..., 0]


def inverse(x) -> np.ndarray:
    """``conj(x) / |x|^2``; raises :class:`SingularityError` on zero entries."""
    x = as_array(x)
    n2 = norm2(x)
    if np.any(n2 == 0.0):
        raise SingularityError("zero divisor requested")
    return conj(x) / n2[..., None]


def associator(x, y, z):
    """``(x y) z - x (y z)``.

    Returns an :class:`Octonion` when all arguments are octonions.
    """
    out = mul(mul(x, y), z) - mul(x, mul(y, z))
    if all(isinstance(v, Octonion) for v in (x, y, z)):
        return Octonion(out)
    return out


class Octonion:
    """Immutable octonion ``c0 e0 + ... + c7 e7``.

    Construct from eight reals, from one iterable of eight reals, or from a
    single real (promoted to ``c * e0``).
    """

    __slots__ = ("_c",)
    __array_priority__ = 20

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            c = as_array(coeffs[0])
        else:
            c = np.asarray(coeffs, dtype=np.float64)
        if c.shape != (8,):
            raise ValueError(f"an Octonion has exactly 8 coefficients, got shape {c.shape}")
        c = np.array(c, dtype=np.float64)
        c.setflags(write=False)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Octonion is immutable")

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __array__(self, dtype=None, copy=None):
        return self._c.astype(dtype) if dtype is not None else self._c.copy()

    def __iter__(self):
        return iter(self._c.tolist())

    def __getitem__(self, i):
        return float(self._c[i])

    def __repr__(self):
        parts = ", ".join(f"{v:g}" for v in self._c)
        return f"Octonion({parts})"

    def __eq__(self, other):
        if isinstance(other, (Octonion, int, float)):
            return bool(np.array_equal(self._c, as_array(other)))
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c.tolist()))

    @property
    def re(self) -> float:
        return float(self._c[0])

    @property
    def vec(self) -> "Octonion":
        c = self._c.copy()
        c[0] = 0.0
        return Octonion(c)

    def conj(self) -> "Octonion":
        return Octonion(conj(self._c))

    def norm(self) -> float:
        return float(norm(self._c))

    def inverse(self) -> "Octonion":
        return Octonion(inverse(self._c))

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return float(norm(self._c - as_array(other))) <= tol

    def __neg__(self):
        return Octonion(-self._c)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, (Octonion, int, float)):
            return Octonion(self._c + as_array(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (Octonion, int, float)):
            return Octonion(self._c - as_array(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Octonion(as_array(other) - self._c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Octonion(self._c * float(other))
        if isinstance(other, Octonion):
            return Octonion(mul(self._c, other._c))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Octonion(self._c * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Octonion(self._c / float(other))
        return NotImplemented


basis: tuple[Octonion, ...] = tuple(Octonion(np.eye(8)[i]) for i in range(8))
