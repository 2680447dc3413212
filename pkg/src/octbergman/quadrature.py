"""Bracketed inner products on the unit sphere S^7 and the unit ball of R^8.

Both inner products are normalised by the sphere area ``omega_8``, which is
folded analytically into uniform averages:

* sphere:  ``(f, g)_S = mean over eta of (conj(g) conj(eta)) (eta f)``
* ball:    ``(f, g)_B = (1/8) mean over x of (conj(g) conj(u)) (u f)``, ``u = x/|x|``

since ``Vol(B) / omega_8 = 1/8``.

Three strategies are available.  ``"mc"`` draws points from a counter-based
generator (Philox keyed by the seed, one counter block per sample block), so
any sample is a function of ``(seed, index)`` only and results do not depend
on how blocks are distributed over workers.  ``"qmc"`` uses independently
scrambled Sobol replicates; its standard error comes from the spread of the
replicate means.  ``"exact"`` expands the integrand as a polynomial and
integrates with closed-form monomial moments; it needs every field to carry
a polynomial form.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Literal, Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from . import algebra as alg
from .algebra import Octonion
from .fields import Field
from .polynomials import OctPoly

__all__ = [
    "BLOCK",
    "QuadratureSpec",
    "InnerProductResult",
    "omega",
    "omega8",
    "exact_sphere_moment",
    "sample_sphere",
    "sample_ball",
    "sphere_average",
    "ball_average",
    "inner_sphere",
    "inner_ball",
    "sphere_integrand",
    "ball_integrand",
]

BLOCK = 1 << 14
EXCLUDE_RADIUS = 1e-12

Strategy = Literal["mc", "qmc", "exact"]


@dataclass(frozen=True)
class QuadratureSpec:
    strategy: Strategy = "mc"
    n_samples: int = 1_000_000
    seed: int = 42
    antithetic: bool = False
    workers: int = 1
    replicates: int = 16

    def __post_init__(self):
        if self.strategy not in ("mc", "qmc", "exact"):
            raise ValueError(f"unknown quadrature strategy {self.strategy!r}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.strategy == "qmc" and self.n_samples < 2 * self.replicates:
            raise ValueError("qmc needs at least two points per replicate")


@dataclass(frozen=True)
class InnerProductResult:
    """Estimated octonion with its Monte Carlo standard error.

    ``component_se`` holds the standard error of each of the eight
    coefficients; ``std_error`` is their root-sum-square, i.e. the RMS size
    of ``|estimate - truth|``.  Both are zero for the exact strategy.
    """

    value: Octonion
    std_error: float
    n_used: int
    component_se: tuple[float, ...] = (0.0,) * 8

    def error_to(self, reference) -> float:
        return float(alg.norm(self.value.coeffs - alg.as_array(reference)))


# moments ----------------------------------------------------------------------


def omega(m: int) -> float:
    """Surface area of the unit sphere in R^m."""
    return 2.0 * math.pi ** (m / 2) / math.gamma(m / 2)


def omega8() -> float:
    return math.pi**4 / 3.0


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def exact_sphere_moment(alpha: Sequence[int], dim: int = 8) -> float:
    """Average of ``x^alpha`` over the unit sphere in R^dim.

    Zero if any exponent is odd; otherwise
    ``prod (alpha_i - 1)!! / (dim (dim + 2) ... (dim + |alpha| - 2))``.
    """
    return float(sphere_moment_fraction(alpha, dim))


def sphere_moment_fraction(alpha: Sequence[int], dim: int = 8) -> Fraction:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != dim or min(alpha) < 0:
        raise ValueError(f"multidegree must have {dim} nonnegative entries, got {alpha}")
    if any(a % 2 for a in alpha):
        return Fraction(0)
    num = 1
    for a in alpha:
        num *= _double_factorial(a - 1)
    den = 1
    for j in range(sum(alpha) // 2):
        den *= dim + 2 * j
    return Fraction(num, den)


def _integrate_sphere_poly(p: OctPoly) -> np.ndarray:
    out = np.zeros(8)
    for a, c in p.terms.items():
        out += float(sphere_moment_fraction(a)) * c
    return out


def _integrate_ball_poly_over_r2(p: OctPoly) -> np.ndarray:
    """``(1/omega_8) int_B p(x) / |x|^2 dV`` term by term."""
    out = np.zeros(8)
    for a, c in p.terms.items():
        out += float(sphere_moment_fraction(a) / (sum(a) + 6)) * c
    return out


# sampling -----------------------------------------------------------------------


def _philox(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, block, 0]))


def _blocks(n: int) -> list[tuple[int, int, int]]:
    return [(b, b * BLOCK, min(BLOCK, n - b * BLOCK)) for b in range(-(-n // BLOCK))]


def _mc_sphere_block(seed: int, block: int, size: int, dim: int, antithetic: bool) -> np.ndarray:
    rng = _philox(seed, block)
    if antithetic:
        half = (size + 1) // 2
        z = rng.standard_normal((half, dim))
        z = np.concatenate([z, -z])[:size]
    else:
        z = rng.standard_normal((size, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _mc_ball_block(seed: int, block: int, size: int, dim: int, antithetic: bool) -> np.ndarray:
    rng = _philox(seed, block)
    if antithetic:
        half = (size + 1) // 2
        z = rng.standard_normal((half, dim))
        u = rng.random(half)
        z = np.concatenate([z, -z])[:size]
        u = np.concatenate([u, u])[:size]
    else:
        z = rng.standard_normal((size, dim))
        u = rng.random(size)
    r = np.maximum(u ** (1.0 / dim), EXCLUDE_RADIUS)
    return z * (r / np.linalg.norm(z, axis=1))[:, None]


def _embed(pts: np.ndarray) -> np.ndarray:
    if pts.shape[1] == 8:
        return pts
    out = np.zeros((pts.shape[0], 8))
    out[:, : pts.shape[1]] = pts
    return out


def sample_sphere(spec: QuadratureSpec, dim: int = 8) -> Iterator[np.ndarray]:
    """Uniform points on the unit sphere, yielded in blocks of shape ``(b, 8)``.

    Points of a lower-dimensional sphere are embedded in the first ``dim``
    coordinates.
    """
    if spec.strategy == "qmc":
        for pts in _qmc_replicates(spec, dim, ball=False):
            yield _embed(pts)
        return
    for b, _, size in _blocks(spec.n_samples):
        yield _embed(_mc_sphere_block(spec.seed, b, size, dim, spec.antithetic))


def sample_ball(spec: QuadratureSpec, dim: int = 8) -> Iterator[np.ndarray]:
    """Uniform points in the unit ball, radius ``u^(1/dim)``, never closer than 1e-12 to 0."""
    if spec.strategy == "qmc":
        for pts in _qmc_replicates(spec, dim, ball=True):
            yield _embed(pts)
        return
    for b, _, size in _blocks(spec.n_samples):
        yield _embed(_mc_ball_block(spec.seed, b, size, dim, spec.antithetic))


def _qmc_replicates(spec: QuadratureSpec, dim: int, ball: bool) -> list[np.ndarray]:
    m = int(math.floor(math.log2(spec.n_samples / spec.replicates)))
    seeds = np.random.SeedSequence(spec.seed).spawn(spec.replicates)
    out = []
    for ss in seeds:
        sob = qmc.Sobol(d=dim + int(ball), scramble=True, seed=np.random.default_rng(ss))
        u = sob.random_base2(m)
        u = np.clip(u, 1e-300, 1.0 - 1e-16)
        z = ndtri(u[:, :dim])
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        if ball:
            z *= np.maximum(u[:, dim] ** (1.0 / dim), EXCLUDE_RADIUS)[:, None]
        out.append(z)
    return out


# estimators ---------------------------------------------------------------------

Integrand = Callable[[np.ndarray], np.ndarray]


def _pair_units(v: np.ndarray, antithetic: bool) -> np.ndarray:
    if not antithetic:
        return v
    half = (v.shape[0] + 1) // 2
    lo, hi = v[:half], v[half:]
    if hi.shape[0] < half:
        return np.concatenate([(lo[: hi.shape[0]] + hi) / 2, lo[hi.shape[0] :]])
    return (lo + hi) / 2


def _run_block(integrand, sampler, seed, b, start, size, dim, antithetic):
    pts = _embed(sampler(seed, b, size, dim, antithetic))
    try:
        v = integrand(pts)
    except Exception as exc:
        raise type(exc)(f"integrand failed on samples [{start}, {start + size}): {exc}") from exc
    u = _pair_units(v.reshape(size, -1), antithetic)
    return u.sum(axis=0), (u * u).sum(axis=0), u.shape[0], v.shape[1:]


def _mc_mean(integrand: Integrand, spec: QuadratureSpec, dim: int, ball: bool):
    sampler = _mc_ball_block if ball else _mc_sphere_block
    jobs = _blocks(spec.n_samples)

    def work(job):
        b, start, size = job
        return _run_block(integrand, sampler, spec.seed, b, start, size, dim, spec.antithetic)

    if spec.workers > 1:
        with ThreadPoolExecutor(spec.workers) as pool:
            parts = list(pool.map(work, jobs))
    else:
        parts = [work(j) for j in jobs]
    shape = parts[0][3]
    s = np.array([p[0] for p in parts])
    ss = np.array([p[1] for p in parts])
    n = sum(p[2] for p in parts)
    # fixed block order, compensated per component
    total = np.array([math.fsum(col) for col in s.T])
    total2 = np.array([math.fsum(col) for col in ss.T])
    mean = total / n
    var = np.maximum(total2 / n - mean * mean, 0.0) * n / max(n - 1, 1)
    se = np.sqrt(var / n)
    return mean.reshape(shape), se.reshape(shape), spec.n_samples


def _qmc_mean(integrand: Integrand, spec: QuadratureSpec, dim: int, ball: bool):
    means = []
    n_used = 0
    for pts in _qmc_replicates(spec, dim, ball):
        pts = _embed(pts)
        vals = [integrand(pts[i : i + BLOCK]) for i in range(0, pts.shape[0], BLOCK)]
        v = np.concatenate(vals)
        means.append(v.mean(axis=0))
        n_used += pts.shape[0]
    means = np.array(means)
    R = means.shape[0]
    return means.mean(axis=0), means.std(axis=0, ddof=1) / math.sqrt(R), n_used


def _estimate(integrand: Integrand, spec: QuadratureSpec, dim: int, ball: bool):
    if spec.strategy == "mc":
        return _mc_mean(integrand, spec, dim, ball)
    if spec.strategy == "qmc":
        return _qmc_mean(integrand, spec, dim, ball)
    raise ValueError("the exact strategy needs polynomial fields; use inner_sphere / inner_ball")


def _to_result(mean, se, n, scale=1.0):
    mean = np.asarray(mean) * scale
    se = np.asarray(se) * scale
    if mean.shape == (8,):
        return InnerProductResult(Octonion(mean), float(np.sqrt(np.sum(se**2))), n, tuple(se.tolist()))
    return [_to_result(m, s, n) for m, s in zip(mean, se)]


def sphere_average(integrand: Integrand, spec: QuadratureSpec, dim: int = 8):
    """Estimate ``(1/omega_dim) int_{S^(dim-1)} integrand dS``.

    ``integrand`` maps points ``(N, 8)`` to ``(N, 8)`` or ``(N, M, 8)``; a
    list of results is returned in the latter case, all from one sample set.
    """
    return _to_result(*_estimate(integrand, spec, dim, ball=False))


def ball_average(integrand: Integrand, spec: QuadratureSpec, dim: int = 8):
    """Estimate ``(1/omega_dim) int_{B_dim} integrand dV`` (``= mean / dim``)."""
    mean, se, n = _estimate(integrand, spec, dim, ball=True)
    return _to_result(mean, se, n, scale=1.0 / dim)


def sphere_integrand(f: Field, g: Field) -> Integrand:
    """``eta -> (conj(g(eta)) conj(eta)) (eta f(eta))``."""

    def fn(eta):
        left = alg.mul(alg.conj(g.fn(eta)), alg.conj(eta))
        right = alg.mul(eta, f.fn(eta))
        return alg.mul(left, right)

    return fn


def ball_integrand(f: Field, g: Field) -> Integrand:
    """``x -> (conj(g(x)) conj(u)) (u f(x))`` with ``u = x/|x|``."""

    def fn(x):
        u = x / alg.norm(x)[:, None]
        left = alg.mul(alg.conj(g.fn(x)), alg.conj(u))
        right = alg.mul(u, f.fn(x))
        return alg.mul(left, right)

    return fn


def _require_poly(f: Field, domain: str) -> OctPoly:
    if f.poly is None:
        raise ValueError(f"exact strategy: field {f.label} has no polynomial form")
    if domain == "everywhere" and f.poly_domain != "everywhere":
        raise ValueError(f"exact strategy: polynomial form of {f.label} is only valid on the sphere")
    return f.poly


def inner_sphere(f: Field, g: Field, spec: QuadratureSpec = QuadratureSpec()) -> InnerProductResult:
    """Boundary inner product ``(f, g)_S``."""
    if spec.strategy == "exact":
        x = OctPoly.identity()
        p = (_require_poly(g, "sphere").conj() * x.conj()) * (x * _require_poly(f, "sphere"))
        return InnerProductResult(Octonion(_integrate_sphere_poly(p)), 0.0, 0)
    return sphere_average(sphere_integrand(f, g), spec)


def inner_ball(f: Field, g: Field, spec: QuadratureSpec = QuadratureSpec()) -> InnerProductResult:
    """Volume inner product ``(f, g)_B``."""
    if spec.strategy == "exact":
        x = OctPoly.identity()
        # (conj(g) conj(x)/|x|)(x/|x| f) = (conj(g) conj(x))(x f) / |x|^2
        p = (_require_poly(g, "everywhere").conj() * x.conj()) * (x * _require_poly(f, "everywhere"))
        return InnerProductResult(Octonion(_integrate_ball_poly_over_r2(p)), 0.0, 0)
    return ball_average(ball_integrand(f, g), spec)
