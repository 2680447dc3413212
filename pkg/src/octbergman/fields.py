"""Octonion-valued fields on R^8 and numerical Cauchy-Riemann operators.

A :class:`Field` wraps a vectorised evaluator ``(N, 8) -> (N, 8)``.  Rows
are independent, so an evaluator may close over per-row parameters (the
``a``-variable fields in :mod:`octbergman.kernels` do this).  Products of
fields evaluate as ``f(x) g(x)`` with exactly the nesting written in code;
``(f * g) * h`` and ``f * (g * h)`` are different fields.

Derivatives are central differences, optionally Richardson-extrapolated
from steps ``h`` and ``h/2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from . import algebra as alg
from .algebra import SingularityError
from .polynomials import OctPoly

__all__ = [
    "SingularSet",
    "Field",
    "DiffScheme",
    "partials",
    "second_partials",
    "apply_D",
    "apply_Dbar",
    "laplacian",
    "kelvin",
    "adjoint_A",
    "constant",
    "identity",
    "from_poly",
]

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SingularSet:
    """Finite list of excluded points, each with an exclusion radius."""

    points: tuple[tuple[float, ...], ...] = ()
    radius: float = 0.0
    label: str = ""

    @classmethod
    def of(cls, *points, radius: float = 0.0, label: str = "") -> "SingularSet":
        pts = tuple(tuple(float(v) for v in alg.as_array(p)) for p in points)
        return cls(pts, radius, label)

    def union(self, other: "SingularSet") -> "SingularSet":
        label = " | ".join(s for s in (self.label, other.label) if s)
        return SingularSet(self.points + other.points, max(self.radius, other.radius), label)

    def distance(self, x: np.ndarray) -> np.ndarray:
        """Distance from each row of ``x`` to the nearest singular point."""
        if not self.points:
            return np.full(x.shape[:-1], np.inf)
        p = np.asarray(self.points)
        d = np.linalg.norm(x[..., None, :] - p, axis=-1)
        return d.min(axis=-1)

    def describe(self) -> str:
        if not self.points:
            return "{}"
        pts = ", ".join("(" + ",".join(f"{v:g}" for v in p) + ")" for p in self.points)
        tag = f"{self.label}: " if self.label else ""
        return f"{tag}{{{pts}}} (exclusion radius {self.radius:g})"

    def check(self, x: np.ndarray, margin: float | np.ndarray = 0.0) -> None:
        if not self.points:
            return
        d = self.distance(x)
        bad = d <= self.radius + margin
        if np.any(bad):
            i = int(np.flatnonzero(np.atleast_1d(bad))[0])
            raise SingularityError(
                f"evaluation point {i} lies within {float(np.max(margin)):g} of the singular set "
                f"{self.describe()}"
            )


class Field:
    """An evaluatable map from points of R^8 to octonions.

    Parameters
    ----------
    fn : callable
        Vectorised evaluator, ``(N, 8) -> (N, 8)``.
    singular : SingularSet, optional
        Points where ``fn`` is undefined.
    label : str
        Human-readable provenance.
    poly : OctPoly, optional
        Polynomial form, used by the exact-moment quadrature.
    poly_domain : {"everywhere", "sphere"}
        Where ``poly`` agrees with ``fn``.  ``"sphere"`` is enough for
        boundary inner products.
    """

    __slots__ = ("fn", "singular", "label", "poly", "poly_domain")

    def __init__(
        self,
        fn: Evaluator,
        singular: SingularSet | None = None,
        label: str = "f",
        poly: OctPoly | None = None,
        poly_domain: Literal["everywhere", "sphere"] = "everywhere",
    ):
        self.fn = fn
        self.singular = singular if singular is not None else SingularSet()
        self.label = label
        self.poly = poly
        self.poly_domain = poly_domain

    def __repr__(self):
        return f"Field({self.label})"

    def __call__(self, x):
        wrap = isinstance(x, alg.Octonion)
        X = alg.as_array(x)
        single = X.ndim == 1
        X2 = np.atleast_2d(X)
        self.singular.check(X2)
        out = self.fn(X2)
        if single:
            out = out[0]
        return alg.Octonion(out) if wrap else out

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Evaluate on a batch without the singular-set pre-check."""
        return self.fn(X)

    # combinators ----------------------------------------------------------
    def _poly_combine(self, other, op):
        if not isinstance(other, Field):
            return None, "everywhere"
        if self.poly is None or other.poly is None:
            return None, "everywhere"
        dom = "sphere" if "sphere" in (self.poly_domain, other.poly_domain) else "everywhere"
        return op(self.poly, other.poly), dom

    def __add__(self, other: "Field") -> "Field":
        poly, dom = self._poly_combine(other, lambda p, q: p + q)
        return Field(
            lambda X: self.fn(X) + other.fn(X),
            self.singular.union(other.singular),
            f"({self.label} + {other.label})",
            poly,
            dom,
        )

    def __sub__(self, other: "Field") -> "Field":
        poly, dom = self._poly_combine(other, lambda p, q: p - q)
        return Field(
            lambda X: self.fn(X) - other.fn(X),
            self.singular.union(other.singular),
            f"({self.label} - {other.label})",
            poly,
            dom,
        )

    def __neg__(self) -> "Field":
        return self.scale(-1.0)

    def scale(self, s: float) -> "Field":
        s = float(s)
        poly = self.poly * s if self.poly is not None else None
        return Field(lambda X: s * self.fn(X), self.singular, f"{s:g}*{self.label}", poly, self.poly_domain)

    def left(self, c) -> "Field":
        """The field ``x -> c f(x)`` for a constant octonion ``c``."""
        c = alg.as_array(c)
        poly = OctPoly.const(c) * self.poly if self.poly is not None else None
        return Field(lambda X: alg.mul(c, self.fn(X)), self.singular, f"c.{self.label}", poly, self.poly_domain)

    def right(self, c) -> "Field":
        """The field ``x -> f(x) c``."""
        c = alg.as_array(c)
        poly = self.poly * OctPoly.const(c) if self.poly is not None else None
        return Field(lambda X: alg.mul(self.fn(X), c), self.singular, f"{self.label}.c", poly, self.poly_domain)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        if not isinstance(other, Field):
            return NotImplemented
        poly, dom = self._poly_combine(other, lambda p, q: p * q)
        return Field(
            lambda X: alg.mul(self.fn(X), other.fn(X)),
            self.singular.union(other.singular),
            f"({self.label} {other.label})",
            poly,
            dom,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def conj(self) -> "Field":
        poly = self.poly.conj() if self.poly is not None else None
        return Field(lambda X: alg.conj(self.fn(X)), self.singular, f"conj({self.label})", poly, self.poly_domain)

    def restrict(self, r: float) -> "Field":
        """``f_r(x) = f(r x)``."""
        r = float(r)
        pts = tuple(tuple(np.asarray(p) / r) for p in self.singular.points)
        sing = SingularSet(pts, self.singular.radius / r, self.singular.label)
        return Field(lambda X: self.fn(r * X), sing, f"{self.label}_r[{r:g}]")


def constant(c, label: str | None = None) -> Field:
    c = alg.as_array(c)
    return Field(
        lambda X: np.broadcast_to(c, X.shape).copy(),
        label=label or "const",
        poly=OctPoly.const(c),
    )


def identity() -> Field:
    return Field(lambda X: np.array(X, dtype=np.float64), label="x", poly=OctPoly.identity())


def from_poly(p: OctPoly, label: str = "poly") -> Field:
    return Field(p, label=label, poly=p)


@dataclass(frozen=True)
class DiffScheme:
    """Finite-difference settings.

    ``h`` is the base step; with ``relative`` the step at ``x`` is
    ``h * (1 + |x|)``.  ``mode="richardson"`` combines steps ``h`` and
    ``h/2`` to cancel the second-order error term.
    """

    h: float = 1e-3
    mode: Literal["central", "richardson"] = "richardson"
    relative: bool = True

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"step h must be positive, got {self.h}")
        if self.mode not in ("central", "richardson"):
            raise ValueError(f"unknown difference mode {self.mode!r}")

    def steps(self, X: np.ndarray) -> np.ndarray:
        if self.relative:
            return self.h * (1.0 + np.linalg.norm(X, axis=-1))
        return np.full(X.shape[:-1], self.h)


def _central(f: Field, X, H, i):
    dx = np.zeros_like(X)
    dx[:, i] = H
    return (f.fn(X + dx) - f.fn(X - dx)) / (2.0 * H[:, None])


def partials(f: Field, X, scheme: DiffScheme) -> np.ndarray:
    """All first partials, shape ``(N, 8 directions, 8 components)``."""
    X = np.atleast_2d(alg.as_array(X))
    H = scheme.steps(X)
    f.singular.check(X, margin=2.0 * H)
    out = np.empty(X.shape[:1] + (8, 8))
    for i in range(8):
        d = _central(f, X, H, i)
        if scheme.mode == "richardson":
            d = (4.0 * _central(f, X, 0.5 * H, i) - d) / 3.0
        out[:, i] = d
    return out


def _second(f: Field, X, H, i, f0):
    dx = np.zeros_like(X)
    dx[:, i] = H
    return (f.fn(X + dx) - 2.0 * f0 + f.fn(X - dx)) / (H * H)[:, None]


def second_partials(f: Field, X, scheme: DiffScheme) -> np.ndarray:
    """Pure second partials ``d^2 f / dx_i^2``, shape ``(N, 8, 8)``."""
    X = np.atleast_2d(alg.as_array(X))
    H = scheme.steps(X)
    f.singular.check(X, margin=2.0 * H)
    f0 = f.fn(X)
    out = np.empty(X.shape[:1] + (8, 8))
    for i in range(8):
        d = _second(f, X, H, i, f0)
        if scheme.mode == "richardson":
            d = (4.0 * _second(f, X, 0.5 * H, i, f0) - d) / 3.0
        out[:, i] = d
    return out


def _dirac(f: Field, scheme: DiffScheme, conjugate: bool) -> Field:
    units = np.eye(8)
    if conjugate:
        units = alg.conj(units)

    def fn(X):
        P = partials(f, X, scheme)
        return sum(alg.mul(units[i], P[:, i]) for i in range(8))

    name = "Dbar" if conjugate else "D"
    return Field(fn, f.singular, f"{name}[{f.label}]")


def apply_D(f: Field, scheme: DiffScheme = DiffScheme()) -> Field:
    """``x -> sum_i e_i (df/dx_i)(x)``, basis units multiplied from the left."""
    return _dirac(f, scheme, conjugate=False)


def apply_Dbar(f: Field, scheme: DiffScheme = DiffScheme()) -> Field:
    """``x -> sum_i conj(e_i) (df/dx_i)(x)``."""
    return _dirac(f, scheme, conjugate=True)


def laplacian(f: Field, scheme: DiffScheme = DiffScheme()) -> Field:
    """Componentwise Laplacian in eight variables."""

    def fn(X):
        return second_partials(f, X, scheme).sum(axis=1)

    return Field(fn, f.singular, f"Lap[{f.label}]")


def _inverted(points: SingularSet, mapping) -> SingularSet:
    pts = []
    for p in points.points:
        p = np.asarray(p)
        if np.any(p != 0.0):
            pts.append(tuple(mapping(p)))
    return SingularSet(tuple(pts), points.radius, points.label)


def kelvin(f: Field) -> Field:
    """Kelvin inversion ``x -> E(x) f(x^{-1})`` with ``E(x) = conj(x)/|x|^8``."""

    def fn(X):
        n2 = alg.norm2(X)
        if np.any(n2 == 0.0):
            raise SingularityError("Kelvin inversion evaluated at 0")
        E = alg.conj(X) / (n2**4)[:, None]
        return alg.mul(E, f.fn(alg.inverse(X)))

    sing = SingularSet.of(np.zeros(8), label="0").union(_inverted(f.singular, alg.inverse))
    return Field(fn, sing, f"K[{f.label}]")


def adjoint_A(f: Field, scheme: DiffScheme = DiffScheme()) -> Field:
    """``x -> Dbar( |x|^-6 conj(f)(x/|x|^2) )`` by finite differences."""

    def inner(X):
        n2 = alg.norm2(X)
        if np.any(n2 == 0.0):
            raise SingularityError("adjoint operator evaluated at 0")
        return alg.conj(f.fn(X / n2[:, None])) / (n2**3)[:, None]

    sing = SingularSet.of(np.zeros(8), label="0").union(
        _inverted(f.singular, lambda p: p / np.dot(p, p))
    )
    return apply_Dbar(Field(inner, sing, f"inv6[{f.label}]"), scheme)
