"""Octonion-valued polynomials in eight real variables.

Used as the exact route for inner products: an integrand that is a
polynomial (on the sphere, or on the ball after a known radial factor) is
integrated term by term with closed-form monomial moments.

Products keep the octonion order of their operands, so bracketing written
in an expression is the bracketing computed.
"""
from __future__ import annotations

from typing import Mapping

import numpy as np

from . import algebra as alg

Multi = tuple[int, int, int, int, int, int, int, int]

_ZERO = (0,) * 8


def _unit(i: int) -> Multi:
    a = [0] * 8
    a[i] = 1
    return tuple(a)


class OctPoly:
    """Sparse polynomial ``sum_alpha c_alpha x^alpha`` with octonion ``c_alpha``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Multi, object] | None = None):
        clean: dict[Multi, np.ndarray] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(v) for v in alpha)
            if len(alpha) != 8 or min(alpha) < 0:
                raise ValueError(f"bad multidegree {alpha}")
            c = np.array(alg.as_array(c), dtype=np.float64)
            if alpha in clean:
                clean[alpha] = clean[alpha] + c
            else:
                clean[alpha] = c
        self.terms = {a: c for a, c in clean.items() if np.any(c != 0.0)}

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "OctPoly":
        return cls({_ZERO: c})

    @classmethod
    def var(cls, i: int) -> "OctPoly":
        """The real coordinate ``x_i`` (as ``x_i e_0``)."""
        return cls({_unit(i): alg.basis[0]})

    @classmethod
    def identity(cls) -> "OctPoly":
        """``x = sum_i x_i e_i``."""
        return cls({_unit(i): alg.basis[i] for i in range(8)})

    # algebra ------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return OctPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return OctPoly({a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return OctPoly({a: c * other for a, c in self.terms.items()})
        other = _coerce(other)
        out: dict[Multi, np.ndarray] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                ab = tuple(i + j for i, j in zip(a, b))
                p = alg.mul(c, d)
                out[ab] = out[ab] + p if ab in out else p
        return OctPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return _coerce(other) * self

    def conj(self) -> "OctPoly":
        return OctPoly({a: alg.conj(c) for a, c in self.terms.items()})

    def diff(self, i: int) -> "OctPoly":
        out = {}
        for a, c in self.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return OctPoly(out)

    def D(self) -> "OctPoly":
        """Exact ``sum_i e_i (d/dx_i) p``."""
        out = OctPoly()
        for i in range(8):
            out = out + alg.basis[i] * self.diff(i)
        return out

    def Dbar(self) -> "OctPoly":
        out = OctPoly()
        for i in range(8):
            out = out + alg.basis[i].conj() * self.diff(i)
        return out

    # structure ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def homogeneous_part(self, k: int) -> "OctPoly":
        return OctPoly({a: c for a, c in self.terms.items() if sum(a) == k})

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(np.max(np.abs(c)) <= tol for c in self.terms.values())

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros(x.shape[:-1] + (8,))
        for a, c in self.terms.items():
            mono = np.ones(x.shape[:-1])
            for i, p in enumerate(a):
                if p:
                    mono = mono * x[..., i] ** p
            out += mono[..., None] * c
        return out

    def __repr__(self):
        return f"OctPoly({len(self.terms)} terms, degree {self.degree})"


def _coerce(v) -> OctPoly:
    if isinstance(v, OctPoly):
        return v
    return OctPoly.const(v)


def real_poly(terms: Mapping[Multi, float]) -> OctPoly:
    """Real-valued polynomial from ``{multidegree: coefficient}``."""
    return OctPoly({a: float(c) for a, c in terms.items()})
