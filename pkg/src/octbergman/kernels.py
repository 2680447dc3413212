"""Closed-form Cauchy, Szego and Bergman kernels on the unit ball of R^8.

All kernel functions take octonion arrays (trailing axis 8) and broadcast
over leading axes.  When every argument is an :class:`~octbergman.algebra.Octonion`
the result is an ``Octonion`` too.

>>> from octbergman.algebra import Octonion, basis
>>> bergman_B(basis[3], Octonion(0, 0, 0, 0, 0, 0, 0, 0))
Octonion(8, 0, 0, 0, 0, 0, 0, 0)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import Octonion, SingularityError
from .fields import DiffScheme, Field, SingularSet, apply_Dbar

__all__ = [
    "KernelParams",
    "UnsupportedDimensionError",
    "cauchy_E",
    "cauchy_E2",
    "szego_S",
    "szego_Sr",
    "bergman_B",
    "unified_kernel",
    "dbar_identity_lhs",
    "dbar_identity_rhs",
    "dbar_identity",
    "cauchy_field",
    "szego_field",
    "bergman_field",
]


class UnsupportedDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class KernelParams:
    """Reproducing point ``a``, Szego radius ``r`` and algebra dimension ``m``."""

    a: Octonion = Octonion(0.0)
    r: float = 1.0
    m: int = 8

    def __post_init__(self):
        if not isinstance(self.a, Octonion):
            object.__setattr__(self, "a", Octonion(self.a))
        if not 0.0 < self.r <= 1.0:
            raise ValueError(f"r must lie in (0, 1], got {self.r}")
        if self.m not in (2, 8):
            raise UnsupportedDimensionError(f"m must be 2 or 8, got {self.m}")
        if self.a.norm() >= self.r:
            raise ValueError(f"|a| = {self.a.norm():g} must be below r = {self.r:g}")


def _out(result, *args):
    if all(isinstance(v, Octonion) for v in args):
        return Octonion(result)
    return result


def _guard(n2, what):
    if np.any(n2 == 0.0):
        raise SingularityError(what)


def cauchy_E(x):
    """``conj(x) / |x|^8``."""
    X = alg.as_array(x)
    n2 = alg.norm2(X)
    _guard(n2, "Cauchy kernel evaluated at its pole x = 0")
    return _out(alg.conj(X) / (n2**4)[..., None], x)


def cauchy_E2(x, a):
    """``(conj(x) - conj(a)) / |x - a|^8``."""
    d = alg.as_array(x) - alg.as_array(a)
    n2 = alg.norm2(d)
    _guard(n2, "Cauchy kernel evaluated at its pole x = a")
    return _out(alg.conj(d) / (n2**4)[..., None], x, a)


def _one_minus_xbar_a(X, A, r=1.0):
    w = -alg.mul(alg.conj(X), A)
    w[..., 0] += r
    return w


def szego_S(x, a):
    """``(1 - conj(x) a) / |1 - conj(x) a|^8``."""
    return szego_Sr(x, a, 1.0)


def szego_Sr(x, a, r: float):
    """``(r - conj(x) a) / |r - conj(x) a|^8``."""
    w = _one_minus_xbar_a(alg.as_array(x), alg.as_array(a), r)
    n2 = alg.norm2(w)
    _guard(n2, "Szego kernel evaluated where conj(x) a = r")
    return _out(w / (n2**4)[..., None], x, a)


def bergman_B(x, a):
    """Bergman kernel of the unit ball.

    ``[(6(1 - |a|^2|x|^2) + 2(1 - conj(x) a)) (1 - conj(x) a)] / |1 - conj(x) a|^10``,
    the prefactor being formed first and multiplied from the left.
    """
    X = alg.as_array(x)
    A = alg.as_array(a)
    w = _one_minus_xbar_a(X, A)
    n2 = alg.norm2(w)
    _guard(n2, "Bergman kernel evaluated where conj(x) a = 1")
    pre = 2.0 * w
    pre[..., 0] += 6.0 * (1.0 - alg.norm2(A) * alg.norm2(X))
    return _out(alg.mul(pre, w) / (n2**5)[..., None], x, a)


def _in_complex_plane(v) -> bool:
    return not np.any(alg.as_array(v)[..., 2:])


def unified_kernel(x, a, m: int):
    """Integrand factor of the dimension-independent reproducing formula.

    ``((m-2)(1 - |a|^2|x|^2) + 2(1 - conj(a) x)) (conj(x) - |x|^2 conj(a)) / |1 - conj(x) a|^(m+2)``.
    For ``m = 2`` both points must lie in ``span{e0, e1}``.
    """
    if m not in (2, 8):
        raise UnsupportedDimensionError(f"unified kernel supports m in {{2, 8}}, got {m}")
    X = alg.as_array(x)
    A = alg.as_array(a)
    if m == 2 and not (_in_complex_plane(X) and _in_complex_plane(A)):
        raise ValueError("m = 2 requires x and a in span{e0, e1}")
    nx2 = alg.norm2(X)
    left = -2.0 * alg.mul(alg.conj(A), X)
    left[..., 0] += 2.0 + (m - 2) * (1.0 - alg.norm2(A) * nx2)
    right = alg.conj(X) - nx2[..., None] * alg.conj(A)
    den = alg.norm2(_one_minus_xbar_a(X, A))
    _guard(den, "unified kernel evaluated where conj(x) a = 1")
    return _out(alg.mul(left, right) / (den ** ((m + 2) / 2))[..., None], x, a)


def dbar_identity_lhs(x, a):
    """``conj(B(x, a)) conj(x)`` from the closed form."""
    X = alg.as_array(x)
    out = alg.mul(alg.conj(bergman_B(X, alg.as_array(a))), alg.conj(X))
    return _out(out, x, a)


def _identity_potential(X):
    """Scalar field ``a -> (1 - |a|^2|x|^2) / |1 - a conj(x)|^8`` for fixed rows ``X``."""

    def fn(A):
        w = -alg.mul(A, alg.conj(X))
        w[..., 0] += 1.0
        return alg.scalar((1.0 - alg.norm2(A) * alg.norm2(X)) / alg.norm2(w) ** 4)

    return fn


def dbar_identity_rhs(x, a, scheme: DiffScheme = DiffScheme()):
    """Finite-difference ``Dbar_a`` of ``(1 - |a|^2|x|^2) / |1 - a conj(x)|^8``."""
    X = np.atleast_2d(alg.as_array(x))
    A = np.atleast_2d(alg.as_array(a))
    X, A = np.broadcast_arrays(X, A)
    field = Field(_identity_potential(np.array(X)), label="identity potential")
    out = apply_Dbar(field, scheme).evaluate(np.array(A))
    if alg.as_array(x).ndim == 1 and alg.as_array(a).ndim == 1:
        out = out[0]
    return _out(out, x, a)


def dbar_identity(x, a, scheme: DiffScheme = DiffScheme()):
    return dbar_identity_lhs(x, a), dbar_identity_rhs(x, a, scheme)


# fields ---------------------------------------------------------------------


def cauchy_field(b=None) -> Field:
    """``x -> E(x - b)``, left analytic away from ``b``."""
    if b is None:
        return Field(cauchy_E, SingularSet.of(np.zeros(8), label="0"), "E")
    B = alg.as_array(b)
    return Field(lambda X: cauchy_E2(X, B), SingularSet.of(B, label="b"), "E(.-b)")


def _pole(a: np.ndarray, r: float) -> SingularSet:
    n2 = float(alg.norm2(a))
    if n2 == 0.0:
        return SingularSet()
    return SingularSet.of(r * a / n2, label="r a/|a|^2")


def szego_field(params: KernelParams) -> Field:
    a = alg.as_array(params.a)
    r = params.r
    return Field(lambda X: szego_Sr(X, a, r), _pole(a, r), f"S^{r:g}(.,a)")


def bergman_field(params: KernelParams) -> Field:
    a = alg.as_array(params.a)
    return Field(lambda X: bergman_B(X, a), _pole(a, 1.0), "B(.,a)")
