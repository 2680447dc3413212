import numpy as np
import pytest

from octbergman import algebra as alg
from octbergman.fields import DiffScheme, constant, from_poly, identity, laplacian
from octbergman.kernels import KernelParams, szego_field
from octbergman.polynomials import OctPoly
from octbergman.quadrature import QuadratureSpec
from octbergman.spherical import (
    ExtractionError,
    RadialFitSpec,
    allowed_block,
    apply_sqrtT,
    apply_T,
    bergman_norm_series,
    extract_parts,
    parseval_decompose,
    part_field,
    radial_fit,
)
from octbergman.suites import counterexample_pair

e = alg.basis
X = OctPoly.var


@pytest.fixture
def dirs(rng):
    return rng.normal(size=(12, 8))


def fueter():
    return from_poly(X(1) - X(0) * e[1], "x1-x0e1")


def others_max(ex, key):
    return max(np.max(alg.norm(v)) for k, v in ex.coeffs.items() if k != key)


def test_inner_part_of_fueter(dirs):
    f = fueter()
    ex = radial_fit(f, dirs, RadialFitSpec(6))
    assert np.allclose(ex.coeffs[("P", 1)], f.evaluate(ex.directions), atol=1e-10)
    assert others_max(ex, ("P", 1)) < 1e-10
    assert ex.cond < 1e4


def test_constant_is_degree_zero(dirs):
    c = 2 * e[3] - e[0]
    ex = radial_fit(constant(c), dirs, RadialFitSpec(8))
    assert np.allclose(ex.coeffs[("P", 0)], c.coeffs, atol=1e-10)
    assert others_max(ex, ("P", 0)) < 1e-10


def test_outer_part_of_counterexample(dirs):
    _, g = counterexample_pair()
    ex = radial_fit(g, dirs, RadialFitSpec(3, "laurent"))
    assert np.allclose(ex.coeffs[("Q", 2)], g.evaluate(ex.directions), atol=1e-10)
    assert others_max(ex, ("Q", 2)) < 1e-10
    exo = radial_fit(g, dirs, RadialFitSpec(4, "outer"))
    assert np.allclose(exo.coeffs[("Q", 2)], g.evaluate(exo.directions), atol=1e-9)


def test_extract_parts_single_direction():
    parts = extract_parts(fueter(), RadialFitSpec(3), e[2] + e[0])
    p1 = next(p for p in parts if p.kind == "P" and p.degree == 1)
    assert np.allclose(p1.value, fueter().evaluate((e[2].coeffs + e[0].coeffs)[None] / np.sqrt(2))[0])
    assert p1.field is not None


def test_multipliers(rng):
    P = rng.uniform(-0.4, 0.4, (10, 8))
    f = fueter()
    spec = RadialFitSpec(5)
    assert np.allclose(apply_T(f, spec).evaluate(P), 10 * f.evaluate(P), atol=1e-9)
    assert np.allclose(apply_sqrtT(f, spec).evaluate(P), np.sqrt(10) * f.evaluate(P), atol=1e-9)
    c = constant(e[5])
    assert np.allclose(apply_T(c, spec).evaluate(P), 8 * e[5].coeffs, atol=1e-9)
    with pytest.raises(ValueError):
        apply_T(f, RadialFitSpec(3, "laurent"))


def test_sqrtT_twice_is_T(rng):
    P = rng.uniform(-0.3, 0.3, (6, 8))
    f = from_poly(X(1) - X(0) * e[1] + (X(1) * X(2) * X(3)).Dbar())
    spec = RadialFitSpec(4)
    twice = apply_sqrtT(apply_sqrtT(f, spec), spec)
    assert np.allclose(twice.evaluate(P), apply_T(f, spec).evaluate(P), atol=1e-8)


def test_truncation_shows_in_radii_dependence(rng):
    S = szego_field(KernelParams(0.3 * e[2]))
    W = rng.normal(size=(5, 8))
    W /= alg.norm(W)[:, None]
    gap = {}
    for K in (10, 18):
        a = part_field(S, "P", 3, RadialFitSpec(K)).evaluate(W)
        b = part_field(S, "P", 3, RadialFitSpec(K, radii=tuple(np.linspace(-0.7, 0.7, K + 5)))).evaluate(W)
        gap[K] = np.max(alg.norm(a - b))
    assert gap[18] < 1e-4 * gap[10]


def test_ill_conditioned_extraction(dirs):
    spec = RadialFitSpec(8, radii=tuple(np.linspace(0.9, 0.95, 12)))
    with pytest.raises(ExtractionError, match="max_degree"):
        radial_fit(fueter(), dirs, spec)
    with pytest.raises(ValueError):
        RadialFitSpec(8, radii=(0.1, 0.2))


def test_inner_parts_are_homogeneous(rng):
    S = szego_field(KernelParams(0.3 * e[2]))
    W = rng.normal(size=(5, 8))
    W /= alg.norm(W)[:, None]
    # K = 18 keeps the truncated tail of both fits below 1e-10
    a = part_field(S, "P", 3, RadialFitSpec(18))
    b = part_field(S, "P", 3, RadialFitSpec(18, radii=tuple(np.linspace(-0.7, 0.7, 23))))
    for r in (0.2, 0.5):
        assert np.allclose(a.evaluate(r * W), r**3 * a.evaluate(W), atol=1e-10)
        assert np.allclose(a.evaluate(r * W), b.evaluate(r * W), rtol=1e-8, atol=1e-10)


def test_x_times_inner_part_is_harmonic(rng):
    S = szego_field(KernelParams(0.3 * e[2]))
    P2 = part_field(S, "P", 2, RadialFitSpec(12))
    h = identity() * P2
    pts = rng.uniform(-0.5, 0.5, (5, 8))
    lap = laplacian(h, DiffScheme(2e-2)).evaluate(pts)
    size = np.max(alg.norm(h.evaluate(pts))) / 0.5**2
    assert np.max(alg.norm(lap)) < 1e-5 * size


def test_block_rule():
    assert allowed_block(("P", 2, "P", 2))
    assert allowed_block(("P", 1, "Q", 2))
    assert allowed_block(("Q", 3, "P", 2))
    assert not allowed_block(("P", 1, "P", 3))
    assert not allowed_block(("P", 2, "Q", 2))
    assert not allowed_block(("Q", 1, "P", 1))


def test_counterexample_exact_table():
    f, g = counterexample_pair()
    tab = parseval_decompose({("P", 1): f}, {("Q", 2): g}, quad=QuadratureSpec("exact"))
    v = tab.blocks[("P", 1, "Q", 2)].value
    assert v.isclose(-e[6] / 40, 1e-15)
    assert np.allclose(tab.block_sum, tab.direct.value.coeffs, atol=1e-15)


def test_disjoint_degrees_vanish():
    f = fueter()
    g3 = from_poly((X(1) * X(2) * X(3) * X(4)).Dbar())
    tab = parseval_decompose(f, g3, RadialFitSpec(4, "laurent"), QuadratureSpec(n_samples=5_000))
    assert np.max(alg.norm(tab.block_sum)) < 1e-10
    assert tab.direct.value.norm() < 4 * tab.direct.std_error + 1e-12


def test_norm_series_exact():
    assert np.isclose(bergman_norm_series(constant(e[0]), RadialFitSpec(3), QuadratureSpec("exact")).value, 1 / 8)
    assert np.isclose(bergman_norm_series(fueter(), RadialFitSpec(3), QuadratureSpec("exact")).value, 1 / 40)
