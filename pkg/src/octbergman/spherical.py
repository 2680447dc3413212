"""Inner and outer spherical parts ``P_k f``, ``Q_k f`` and operators built on them.

Along a ray ``r -> r w`` a left analytic field expands as

    f(r w) = sum_k r^k P_k f(w) + sum_k r^-(k+7) Q_k f(w),

so the parts at a direction ``w`` are recovered by a least-squares fit of
samples ``f(r_j w)`` against those radial powers.  Extraction is done per
direction; no global basis is ever built.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Literal, Mapping, Sequence, Union

import numpy as np

from . import algebra as alg
from .fields import Field
from .quadrature import (
    InnerProductResult,
    QuadratureSpec,
    inner_ball,
    inner_sphere,
    sphere_average,
)

__all__ = [
    "ExtractionError",
    "RadialFitSpec",
    "SphericalPart",
    "Extraction",
    "radial_fit",
    "extract_parts",
    "part_field",
    "apply_sqrtT",
    "apply_T",
    "DecompositionTable",
    "parseval_decompose",
    "NormSeries",
    "bergman_norm_series",
]

Kind = Literal["P", "Q"]


class ExtractionError(ValueError):
    pass


def _chebyshev(n: int, lo: float, hi: float) -> tuple[float, ...]:
    t = np.cos((2 * np.arange(n) + 1) * np.pi / (2 * n))[::-1]
    return tuple((lo + hi) / 2 + (hi - lo) / 2 * t)


@dataclass(frozen=True)
class RadialFitSpec:
    """Radial least-squares setup.

    ``mode="inner"`` fits ``r^k`` for ``k <= max_degree`` on radii inside the
    ball (default ``max_degree + 3`` Chebyshev radii in [-0.85, 0.85]);
    ``"outer"`` fits ``r^-(k+7)`` on +-[1.1, 1.9]; ``"laurent"`` fits both on
    an annulus around the unit sphere, +-[0.6, 1.6] by default.  Negative
    radii sample the opposite ray, where the same expansion holds.
    """

    max_degree: int = 8
    mode: Literal["inner", "outer", "laurent"] = "inner"
    radii: tuple[float, ...] | None = None
    cond_limit: float = 1e10

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.mode not in ("inner", "outer", "laurent"):
            raise ValueError(f"unknown extraction mode {self.mode!r}")
        if self.radii is not None and len(self.radii) < len(self.columns()):
            raise ValueError(
                f"{len(self.radii)} radii cannot determine {len(self.columns())} coefficients"
            )

    def columns(self) -> list[tuple[Kind, int]]:
        K = self.max_degree
        cols: list[tuple[Kind, int]] = []
        if self.mode in ("inner", "laurent"):
            cols += [("P", k) for k in range(K + 1)]
        if self.mode in ("outer", "laurent"):
            cols += [("Q", k) for k in range(K + 1)]
        return cols

    def sample_radii(self) -> np.ndarray:
        if self.radii is not None:
            return np.asarray(self.radii, dtype=np.float64)
        K = self.max_degree
        # both signs of r: homogeneity holds along the full line through 0,
        # and a mirrored grid keeps the power basis well conditioned
        if self.mode == "inner":
            return np.asarray(_chebyshev(K + 3, -0.85, 0.85))
        if self.mode == "outer":
            side = np.asarray(_chebyshev((K + 4) // 2, 1.1, 1.9))
        else:
            side = np.geomspace(0.6, 1.6, K + 3)
        return np.concatenate([-side[::-1], side])


def _exponent(kind: Kind, k: int) -> int:
    return k if kind == "P" else -(k + 7)


@dataclass(frozen=True)
class _Solver:
    columns: list
    radii: np.ndarray
    design: np.ndarray
    pinv: np.ndarray
    cond: float


def _solver(spec: RadialFitSpec) -> _Solver:
    cols = spec.columns()
    r = spec.sample_radii()
    V = np.stack([r ** _exponent(kd, k) for kd, k in cols], axis=1)
    scale = np.linalg.norm(V, axis=0)
    Vs = V / scale
    cond = float(np.linalg.cond(Vs))
    if not np.isfinite(cond) or cond > spec.cond_limit:
        raise ExtractionError(
            f"radial design matrix has condition number {cond:.3g} > {spec.cond_limit:.3g}; "
            "lower max_degree or spread the radii"
        )
    pinv = np.linalg.pinv(Vs) / scale[:, None]
    return _Solver(cols, r, V, pinv, cond)


@dataclass
class Extraction:
    """Fitted parts along a batch of directions.

    ``coeffs[(kind, k)]`` has shape ``(N, 8)``: the value of ``P_k f`` or
    ``Q_k f`` at each unit direction.  ``residual`` is the relative RMS misfit
    per direction.
    """

    directions: np.ndarray
    coeffs: dict
    residual: np.ndarray
    cond: float

    def parts(self) -> list["SphericalPart"]:
        return [SphericalPart(k, kind, v) for (kind, k), v in self.coeffs.items()]


@dataclass(frozen=True)
class SphericalPart:
    """One extracted component: degree, kind ``"P"`` (inner) or ``"Q"`` (outer), value at the direction."""

    degree: int
    kind: Kind
    value: np.ndarray
    field: Field | None = dc_field(default=None, compare=False)


def radial_fit(f: Field, directions, spec: RadialFitSpec = RadialFitSpec()) -> Extraction:
    """Fit the radial expansion of ``f`` along each unit direction (rows of ``directions``)."""
    W = np.atleast_2d(alg.as_array(directions))
    W = W / alg.norm(W)[:, None]
    sol = _solver(spec)
    samples = np.stack([f.fn(r * W) for r in sol.radii])  # (R, N, 8)
    c = np.einsum("cr,rnk->cnk", sol.pinv, samples)
    fit = np.einsum("rc,cnk->rnk", sol.design, c)
    scale = np.sqrt(np.mean(samples**2, axis=(0, 2))) + 1e-300
    residual = np.sqrt(np.mean((fit - samples) ** 2, axis=(0, 2))) / scale
    coeffs = {col: c[i] for i, col in enumerate(sol.columns)}
    return Extraction(W, coeffs, residual, sol.cond)


def extract_parts(f: Field, spec: RadialFitSpec, omega) -> list[SphericalPart]:
    """Parts of ``f`` at the single direction ``omega``, each with its lazily evaluated field."""
    ex = radial_fit(f, omega, spec)
    return [
        SphericalPart(k, kind, v[0], part_field(f, kind, k, spec))
        for (kind, k), v in ex.coeffs.items()
    ]


def _split(X):
    rad = alg.norm(X)
    W = np.where(rad[:, None] > 0, X / np.where(rad > 0, rad, 1.0)[:, None], np.eye(8)[0])
    return rad, W


def part_field(f: Field, kind: Kind, k: int, spec: RadialFitSpec) -> Field:
    """Homogeneous extension ``|x|^k P_k f(x/|x|)`` or ``|x|^-(k+7) Q_k f(x/|x|)``."""
    if (kind, k) not in spec.columns():
        raise ValueError(f"{kind}_{k} is not fitted by {spec}")

    def fn(X):
        rad, W = _split(X)
        c = radial_fit(f, W, spec).coeffs[(kind, k)]
        return (rad ** _exponent(kind, k))[:, None] * c

    return Field(fn, label=f"{kind}_{k}[{f.label}]")


def _multiplier(f: Field, spec: RadialFitSpec, power: float, name: str) -> Field:
    if spec.mode != "inner":
        raise ValueError("T and sqrt(T) act on fields analytic in a ball; use mode='inner'")
    weights = np.array([(2 * k + 8) ** power for k in range(spec.max_degree + 1)])

    def fn(X):
        rad, W = _split(X)
        ex = radial_fit(f, W, spec)
        out = np.zeros_like(X, dtype=np.float64)
        for k in range(spec.max_degree + 1):
            out += (weights[k] * rad**k)[:, None] * ex.coeffs[("P", k)]
        return out

    return Field(fn, label=f"{name}[{f.label}]")


def apply_sqrtT(f: Field, spec: RadialFitSpec = RadialFitSpec()) -> Field:
    """``sum_{k <= K} sqrt(2k + 8) P_k f``."""
    return _multiplier(f, spec, 0.5, "sqrtT")


def apply_T(f: Field, spec: RadialFitSpec = RadialFitSpec()) -> Field:
    """``sum_{k <= K} (2k + 8) P_k f``."""
    return _multiplier(f, spec, 1.0, "T")


# Parseval -------------------------------------------------------------------------

PartSum = Mapping[tuple[str, int], Field]
BlockKey = tuple[str, int, str, int]


def _bracket(fv, gv, eta):
    left = alg.mul(alg.conj(gv), alg.conj(eta))
    right = alg.mul(eta, fv)
    return alg.mul(left, right)


def allowed_block(key: BlockKey) -> bool:
    """Blocks that may be nonzero: same kind and degree, or ``(P_k, Q_{k+1})`` either way."""
    fk, j, gk, k = key
    if fk == gk:
        return j == k
    if fk == "P":
        return k == j + 1
    return j == k + 1


@dataclass
class DecompositionTable:
    blocks: dict[BlockKey, InnerProductResult]
    direct: InnerProductResult
    block_sum: np.ndarray
    cond: float | None = None

    def nonzero(self, tol: float) -> dict[BlockKey, InnerProductResult]:
        return {k: v for k, v in self.blocks.items() if v.value.norm() > tol}

    def forbidden(self) -> dict[BlockKey, InnerProductResult]:
        return {k: v for k, v in self.blocks.items() if not allowed_block(k)}


def _parts_on_sphere(f, spec: RadialFitSpec):
    """Evaluator ``eta -> {(kind, k): values}`` for a field or a finite part sum."""
    if isinstance(f, Field):
        return lambda eta: radial_fit(f, eta, spec).coeffs
    return lambda eta: {key: fld.fn(eta) for key, fld in f.items()}


def _total(f) -> Field:
    if isinstance(f, Field):
        return f
    fields = list(f.values())
    out = fields[0]
    for fld in fields[1:]:
        out = out + fld
    return out


def parseval_decompose(
    f: Union[Field, PartSum],
    g: Union[Field, PartSum],
    spec: RadialFitSpec = RadialFitSpec(max_degree=3, mode="laurent"),
    quad: QuadratureSpec = QuadratureSpec(),
) -> DecompositionTable:
    """All blocks ``(X_j f, Y_k g)_S`` plus the direct ``(f, g)_S`` on one sample set.

    ``f`` and ``g`` are fields (parts are fitted per direction) or mappings
    ``{("P", k): field, ("Q", k): field}`` of known parts.  With the exact
    strategy every part must carry a polynomial form.
    """
    if quad.strategy == "exact":
        if isinstance(f, Field) or isinstance(g, Field):
            raise ValueError("exact Parseval decomposition needs explicit part sums")
        blocks = {
            (fk, j, gk, k): inner_sphere(ff, gg, quad)
            for (fk, j), ff in f.items()
            for (gk, k), gg in g.items()
        }
        direct = inner_sphere(_total(f), _total(g), quad)
        allowed = [v.value.coeffs for key, v in blocks.items() if allowed_block(key)]
        return DecompositionTable(blocks, direct, np.sum(allowed, axis=0) if allowed else np.zeros(8))

    fp = _parts_on_sphere(f, spec)
    gp = _parts_on_sphere(g, spec)
    ftot, gtot = _total(f), _total(g)
    keys: list[BlockKey] = []

    def integrand(eta):
        F = fp(eta)
        G = gp(eta)
        if not keys:
            keys.extend((fk, j, gk, k) for (fk, j) in F for (gk, k) in G)
        vals = [_bracket(F[(fk, j)], G[(gk, k)], eta) for fk, j, gk, k in keys]
        vals.append(_bracket(ftot.fn(eta), gtot.fn(eta), eta))
        return np.stack(vals, axis=1)

    results = sphere_average(integrand, quad)
    blocks = dict(zip(keys, results[:-1]))
    allowed = [v.value.coeffs for key, v in blocks.items() if allowed_block(key)]
    cond = _solver(spec).cond if (isinstance(f, Field) or isinstance(g, Field)) else None
    return DecompositionTable(blocks, results[-1], np.sum(allowed, axis=0), cond)


@dataclass
class NormSeries:
    """``sum_k (2k+8)^-1 ||P_k f||_S^2`` with its per-degree terms."""

    value: float
    std_error: float
    terms: tuple[float, ...]


def bergman_norm_series(
    f: Field,
    spec: RadialFitSpec = RadialFitSpec(),
    quad: QuadratureSpec = QuadratureSpec(),
) -> NormSeries:
    """Bergman norm squared through the inner spherical parts of ``f``.

    The exact strategy takes ``P_k f`` as the degree-``k`` homogeneous part
    of ``f.poly``, valid for left analytic polynomials.
    """
    K = spec.max_degree
    w = np.array([1.0 / (2 * k + 8) for k in range(K + 1)])
    if quad.strategy == "exact":
        if f.poly is None or f.poly_domain != "everywhere":
            raise ValueError(f"exact norm series needs a polynomial form of {f.label}")
        from .fields import from_poly

        terms = []
        for k in range(K + 1):
            pk = from_poly(f.poly.homogeneous_part(k))
            terms.append(inner_sphere(pk, pk, quad).value.re)
        terms = np.array(terms)
        return NormSeries(float(np.dot(w, terms)), 0.0, tuple(terms.tolist()))
    if spec.mode != "inner":
        raise ValueError("the norm series uses inner parts only; use mode='inner'")

    def integrand(eta):
        c = radial_fit(f, eta, spec).coeffs
        vals = [_bracket(c[("P", k)], c[("P", k)], eta) for k in range(K + 1)]
        return np.stack(vals, axis=1)

    res = sphere_average(integrand, quad)
    terms = np.array([r.value.re for r in res])
    ses = np.array([r.component_se[0] for r in res])
    # terms share samples, so bound the weighted error linearly
    return NormSeries(float(np.dot(w, terms)), float(np.dot(w, ses)), tuple(terms.tolist()))


def bergman_norm_direct(f: Field, quad: QuadratureSpec = QuadratureSpec()) -> InnerProductResult:
    """``(f, f)_B`` straight from the volume inner product."""
    return inner_ball(f, f, quad)
